use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{CategoryParts, KCategory, Morphism};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linalg::SparseVec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: String,
    pub target: String,
}

/// A finite quiver with monomial relations. Paths and relations are written
/// in traversal order: `[a, b]` is `a` followed by `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverSpec {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Vec<String>>,
    pub max_path_length: usize,
}

struct Resolved {
    vertices: Vec<String>,
    source: Vec<usize>,
    target: Vec<usize>,
    relations: Vec<Vec<usize>>,
}

impl QuiverSpec {
    fn resolve(&self) -> Result<Resolved> {
        let mut vertices = self.vertices.clone();
        vertices.sort();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput("duplicate quiver vertex".to_string()));
        }
        let v = |name: &str| {
            vertices.binary_search_by(|o| o.as_str().cmp(name)).map_err(|_| Error::UnknownObject(name.to_string()))
        };
        let mut names = BTreeMap::new();
        let (mut source, mut target) = (Vec::new(), Vec::new());
        for (i, a) in self.arrows.iter().enumerate() {
            if names.insert(a.name.as_str(), i).is_some() {
                return Err(Error::InvalidInput(format!("duplicate arrow {:?}", a.name)));
            }
            source.push(v(&a.source)?);
            target.push(v(&a.target)?);
        }
        let mut relations = Vec::new();
        for r in &self.relations {
            if r.len() < 2 {
                return Err(Error::InvalidInput(format!("relation {r:?} has length below 2")));
            }
            let mut path = Vec::new();
            for a in r {
                path.push(*names.get(a.as_str()).ok_or_else(|| Error::InvalidInput(format!("unknown arrow {a:?}")))?);
            }
            if path.windows(2).any(|w| target[w[0]] != source[w[1]]) {
                return Err(Error::InvalidInput(format!("relation {r:?} is not a path")));
            }
            relations.push(path);
        }
        Ok(Resolved { vertices, source, target, relations })
    }

    /// All relation-free paths of length at least one, in order of length.
    pub fn normal_paths(&self) -> Result<Vec<Vec<usize>>> {
        let q = self.resolve()?;
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut layer: Vec<Vec<usize>> = (0..self.arrows.len()).map(|a| alloc::vec![a]).collect();
        let mut len = 1;
        while !layer.is_empty() {
            if len >= self.max_path_length {
                let p = &layer[0];
                let name: Vec<&str> = p.iter().map(|&a| self.arrows[a].name.as_str()).collect();
                return Err(Error::NotFiniteDimensional(name.join(".")));
            }
            let mut next = Vec::new();
            for p in &layer {
                let end = q.target[*p.last().unwrap()];
                for a in 0..self.arrows.len() {
                    if q.source[a] != end {
                        continue;
                    }
                    let mut ext = p.clone();
                    ext.push(a);
                    if !q.relations.iter().any(|r| ext.ends_with(r)) {
                        next.push(ext);
                    }
                }
            }
            out.append(&mut layer);
            layer = next;
            len += 1;
        }
        Ok(out)
    }
}

/// `kQ/I` for a monomial ideal `I`: the basis is the set of relation-free paths.
pub fn from_quiver_monomial(q: &QuiverSpec, field: FieldSpec) -> Result<KCategory> {
    let r = q.resolve()?;
    let paths = q.normal_paths()?;
    let mut parts = CategoryParts { objects: r.vertices.clone(), ..Default::default() };
    for (x, name) in r.vertices.iter().enumerate() {
        parts.morphisms.push(Morphism { name: format!("e_{name}"), source: x, target: x });
    }
    parts.identities = (0..r.vertices.len()).collect();
    let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for p in &paths {
        let name: Vec<&str> = p.iter().map(|&a| q.arrows[a].name.as_str()).collect();
        index.insert(p.clone(), parts.morphisms.len());
        parts.morphisms.push(Morphism {
            name: name.join("."),
            source: r.source[p[0]],
            target: r.target[*p.last().unwrap()],
        });
    }
    for p in &paths {
        for s in &paths {
            // f = s after g = p
            if r.target[*p.last().unwrap()] != r.source[s[0]] {
                continue;
            }
            let mut cat = p.clone();
            cat.extend_from_slice(s);
            if let Some(&id) = index.get(&cat) {
                parts.comp.insert((index[s], index[p]), SparseVec::unit(id, field));
            }
        }
    }
    KCategory::from_parts(field, parts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arrow(name: &str, s: &str, t: &str) -> Arrow {
        Arrow { name: name.to_string(), source: s.to_string(), target: t.to_string() }
    }

    #[test]
    fn quiver_examples() {
        let q = FieldSpec::Rationals;
        let single = QuiverSpec {
            vertices: alloc::vec!["x".into(), "y".into()],
            arrows: alloc::vec![arrow("a", "x", "y")],
            relations: Vec::new(),
            max_path_length: 2,
        };
        let c = from_quiver_monomial(&single, q).unwrap();
        assert_eq!(c.hom_dim(0, 1), 1);
        let lp = QuiverSpec {
            vertices: alloc::vec!["x".into()],
            arrows: alloc::vec![arrow("l", "x", "x")],
            relations: alloc::vec![alloc::vec!["l".into(), "l".into()]],
            max_path_length: 2,
        };
        let c = from_quiver_monomial(&lp, q).unwrap();
        assert_eq!(c.hom_dim(0, 0), 2);
        assert!(c.validate().passed());
        let l = c.morphism_index("l").unwrap();
        assert!(c.compose_basis(l, l).is_none());
    }

    #[test]
    fn unbounded_paths_are_rejected() {
        let lp = QuiverSpec {
            vertices: alloc::vec!["x".into()],
            arrows: alloc::vec![arrow("l", "x", "x")],
            relations: Vec::new(),
            max_path_length: 4,
        };
        assert!(matches!(from_quiver_monomial(&lp, FieldSpec::Rationals), Err(Error::NotFiniteDimensional(_))));
    }
}
