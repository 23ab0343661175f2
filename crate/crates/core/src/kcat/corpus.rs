//! Generators for the families of posets and quivers used as test corpus.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Arrow, KCategory, PosetSpec, QuiverSpec, from_poset_incidence, from_quiver_monomial};
use crate::error::{Error, Result};
use crate::field::FieldSpec;

/// A category presentation: either a poset (incidence category) or a quiver
/// with monomial relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Presentation {
    Poset(PosetSpec),
    Quiver(QuiverSpec),
}

impl Presentation {
    pub fn build(&self, field: FieldSpec) -> Result<KCategory> {
        match self {
            Presentation::Poset(p) => from_poset_incidence(p, field),
            Presentation::Quiver(q) => from_quiver_monomial(q, field),
        }
    }

    pub fn poset(&self) -> Option<&PosetSpec> {
        match self {
            Presentation::Poset(p) => Some(p),
            Presentation::Quiver(_) => None,
        }
    }
}

/// Named corpus families and their parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Chain { n: usize },
    Antichain { n: usize },
    RandomTree { n: usize, seed: u64 },
    TreeQuiver { n: usize, seed: u64 },
    CrownIncidence { rows: usize, n: usize, extra: usize },
    CrownRadSq { rows: usize, n: usize, extra: usize },
    ULayered { n: usize, m: usize },
    AGt { n: usize, t: usize, t2: usize, rows: usize },
}

impl Family {
    pub fn presentation(&self) -> Result<Presentation> {
        Ok(match *self {
            Family::Chain { n } => Presentation::Poset(chain(n)?),
            Family::Antichain { n } => Presentation::Poset(antichain(n)?),
            Family::RandomTree { n, seed } => Presentation::Poset(random_tree(n, seed)?),
            Family::TreeQuiver { n, seed } => Presentation::Quiver(random_tree_quiver(n, seed)?),
            Family::CrownIncidence { rows, n, extra } => Presentation::Poset(crown_incidence(rows, n, extra)?),
            Family::CrownRadSq { rows, n, extra } => Presentation::Quiver(crown_radsq(rows, n, extra)?),
            Family::ULayered { n, m } => Presentation::Poset(u_layered(n, m)?),
            Family::AGt { n, t, t2, rows } => Presentation::Poset(a_gt(n, t, t2, rows)?),
        })
    }

    pub fn generate(&self, field: FieldSpec) -> Result<KCategory> {
        self.presentation()?.build(field)
    }

    /// Short label such as `crown-incidence(2,3,0)`.
    pub fn label(&self) -> String {
        match *self {
            Family::Chain { n } => format!("chain({n})"),
            Family::Antichain { n } => format!("antichain({n})"),
            Family::RandomTree { n, seed } => format!("random-tree({n},{seed})"),
            Family::TreeQuiver { n, seed } => format!("tree-quiver({n},{seed})"),
            Family::CrownIncidence { rows, n, extra } => format!("crown-incidence({rows},{n},{extra})"),
            Family::CrownRadSq { rows, n, extra } => format!("crown-radsq({rows},{n},{extra})"),
            Family::ULayered { n, m } => format!("u-layered({n},{m})"),
            Family::AGt { n, t, t2, rows } => format!("a-gt({n},{t},{t2},{rows})"),
        }
    }

    /// Parses the form produced by [`Family::label`].
    pub fn parse(text: &str) -> Result<Family> {
        let bad = || Error::BadParams(format!("cannot parse family {text:?}"));
        let (name, rest) = text.split_once('(').ok_or_else(bad)?;
        let args = rest.strip_suffix(')').ok_or_else(bad)?;
        let nums: Vec<u64> = args
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| s.trim().parse::<u64>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        let u = |i: usize| nums.get(i).map(|&v| v as usize).ok_or_else(bad);
        let want = |k: usize| if nums.len() == k { Ok(()) } else { Err(bad()) };
        let fam = match name.trim() {
            "chain" => { want(1)?; Family::Chain { n: u(0)? } }
            "antichain" => { want(1)?; Family::Antichain { n: u(0)? } }
            "random-tree" => { want(2)?; Family::RandomTree { n: u(0)?, seed: nums[1] } }
            "tree-quiver" => { want(2)?; Family::TreeQuiver { n: u(0)?, seed: nums[1] } }
            "crown-incidence" => { want(3)?; Family::CrownIncidence { rows: u(0)?, n: u(1)?, extra: u(2)? } }
            "crown-radsq" => { want(3)?; Family::CrownRadSq { rows: u(0)?, n: u(1)?, extra: u(2)? } }
            "u-layered" => { want(2)?; Family::ULayered { n: u(0)?, m: u(1)? } }
            "a-gt" => { want(4)?; Family::AGt { n: u(0)?, t: u(1)?, t2: u(2)?, rows: u(3)? } }
            _ => return Err(bad()),
        };
        Ok(fam)
    }
}

fn positive(n: usize, what: &str) -> Result<()> {
    if n == 0 { Err(Error::BadParams(format!("{what} must be positive"))) } else { Ok(()) }
}

fn node(layer: usize, pos: usize) -> String {
    format!("{layer:02}.{pos:02}")
}

/// `0 < 1 < ... < n-1`.
pub fn chain(n: usize) -> Result<PosetSpec> {
    positive(n, "chain length")?;
    let elements: Vec<String> = (0..n).map(|i| format!("{i:02}")).collect();
    let covers = elements.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
    Ok(PosetSpec { elements, covers })
}

pub fn antichain(n: usize) -> Result<PosetSpec> {
    positive(n, "antichain size")?;
    Ok(PosetSpec { elements: (0..n).map(|i| format!("{i:02}")).collect(), covers: Vec::new() })
}

/// Vertex `i >= 1` attaches to a uniformly chosen earlier vertex, with a
/// random orientation. Returns `(parent, child_is_above)` for each `i`.
fn tree_edges(n: usize, seed: u64) -> Vec<(usize, usize, bool)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (1..n).map(|i| (rng.gen_range(0..i), i, rng.gen_bool(0.5))).collect()
}

/// A random tree poset: its Hasse diagram is a tree on `n` vertices.
pub fn random_tree(n: usize, seed: u64) -> Result<PosetSpec> {
    positive(n, "tree size")?;
    let name = |i: usize| format!("t{i:02}");
    let covers = tree_edges(n, seed)
        .into_iter()
        .map(|(p, c, up)| if up { (name(p), name(c)) } else { (name(c), name(p)) })
        .collect();
    Ok(PosetSpec { elements: (0..n).map(name).collect(), covers })
}

/// A random tree quiver with a random set of length-two zero relations.
pub fn random_tree_quiver(n: usize, seed: u64) -> Result<QuiverSpec> {
    positive(n, "tree size")?;
    let name = |i: usize| format!("t{i:02}");
    let arrows: Vec<Arrow> = tree_edges(n, seed)
        .into_iter()
        .map(|(p, c, up)| {
            let (s, t) = if up { (p, c) } else { (c, p) };
            Arrow { name: format!("a{c:02}"), source: name(s), target: name(t) }
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut relations = Vec::new();
    for a in &arrows {
        for b in &arrows {
            if a.target == b.source && rng.gen_bool(0.5) {
                relations.push(alloc::vec![a.name.clone(), b.name.clone()]);
            }
        }
    }
    Ok(QuiverSpec { vertices: (0..n).map(name).collect(), arrows, relations, max_path_length: n.max(2) })
}

fn crown_checks(rows: usize, n: usize, extra: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::BadParams("crowns need n >= 3".to_string()));
    }
    positive(rows, "row count")?;
    if extra >= n {
        return Err(Error::BadParams("extra vertices must be fewer than n".to_string()));
    }
    Ok(())
}

/// Vertices and upward edges of `rows` cyclic rows of length `n`, plus
/// `extra` vertices of a partial next row.
fn crown_graph(rows: usize, n: usize, extra: usize) -> (Vec<String>, Vec<(String, String, char)>) {
    let mut elements = Vec::new();
    for l in 0..rows {
        for t in 0..n {
            elements.push(node(l, t));
        }
    }
    for t in 0..extra {
        elements.push(node(rows, t));
    }
    let mut edges = Vec::new();
    for l in 0..rows {
        for t in 0..n {
            let row_len = if l + 1 < rows { n } else { extra };
            if l + 1 == rows && extra == 0 {
                continue;
            }
            if t < row_len {
                edges.push((node(l, t), node(l + 1, t), 'a'));
            }
            let up = (t + 1) % n;
            if up < row_len {
                edges.push((node(l, t), node(l + 1, up), 'b'));
            }
        }
    }
    (elements, edges)
}

/// Incidence presentation of the crown: `(l,t) < (l+1,t)` and
/// `(l,t) < (l+1,t+1 mod n)`.
pub fn crown_incidence(rows: usize, n: usize, extra: usize) -> Result<PosetSpec> {
    crown_checks(rows, n, extra)?;
    let (elements, edges) = crown_graph(rows, n, extra);
    Ok(PosetSpec { elements, covers: edges.into_iter().map(|(a, b, _)| (a, b)).collect() })
}

/// The crown quiver with every path of length two set to zero.
pub fn crown_radsq(rows: usize, n: usize, extra: usize) -> Result<QuiverSpec> {
    crown_checks(rows, n, extra)?;
    let (vertices, edges) = crown_graph(rows, n, extra);
    let arrows: Vec<Arrow> = edges
        .into_iter()
        .map(|(s, t, kind)| Arrow { name: format!("{kind}{s}"), source: s, target: t })
        .collect();
    let mut relations = Vec::new();
    for a in &arrows {
        for b in &arrows {
            if a.target == b.source {
                relations.push(alloc::vec![a.name.clone(), b.name.clone()]);
            }
        }
    }
    Ok(QuiverSpec { vertices, arrows, relations, max_path_length: 2 })
}

/// `m+1` layers of `n` elements with every element of a layer below every
/// element of the next one. Names are `layer.position`.
pub fn u_layered(n: usize, m: usize) -> Result<PosetSpec> {
    positive(n, "layer width")?;
    let mut elements = Vec::new();
    let mut covers = Vec::new();
    for t in 0..=m {
        for l in 0..n {
            elements.push(node(t, l));
            if t > 0 {
                for l0 in 0..n {
                    covers.push((node(t - 1, l0), node(t, l)));
                }
            }
        }
    }
    Ok(PosetSpec { elements, covers })
}

/// Truncation of the crown with a widened top: `rows` cyclic rows of length
/// `n`, then a row of positions `-t..=n-1+t2` and a cyclic top row over the
/// same positions. Positions are shifted by `t` in the names.
pub fn a_gt(n: usize, t: usize, t2: usize, rows: usize) -> Result<PosetSpec> {
    if n < 3 {
        return Err(Error::BadParams("crowns need n >= 3".to_string()));
    }
    let wide = n + t + t2;
    let mut elements = Vec::new();
    let mut covers = Vec::new();
    for l in 0..rows {
        for p in 0..n {
            elements.push(node(l, p + t));
        }
    }
    for l in rows..rows + 2 {
        for p in 0..wide {
            elements.push(node(l, p));
        }
    }
    for l in 0..rows {
        for p in 0..n {
            let (a, b) = (p, (p + 1) % n);
            covers.push((node(l, p + t), node(l + 1, a + t)));
            covers.push((node(l, p + t), node(l + 1, b + t)));
        }
    }
    for p in 0..wide {
        covers.push((node(rows, p), node(rows + 1, p)));
        covers.push((node(rows, p), node(rows + 1, (p + 1) % wide)));
    }
    Ok(PosetSpec { elements, covers })
}

/// The checked-in test corpus: small chains and antichains, 25 random trees
/// with at most 12 vertices, tree quivers, crowns in both presentations,
/// layered posets and one widened crown.
pub fn standard_corpus() -> Vec<Family> {
    let mut out = alloc::vec![
        Family::Chain { n: 1 },
        Family::Chain { n: 2 },
        Family::Chain { n: 3 },
        Family::Chain { n: 4 },
        Family::Antichain { n: 3 },
    ];
    out.extend((1..=25).map(|seed| Family::RandomTree { n: 4 + (seed as usize * 5) % 9, seed }));
    out.extend((1..=5).map(|seed| Family::TreeQuiver { n: 3 + seed as usize, seed }));
    out.extend([
        Family::CrownIncidence { rows: 2, n: 3, extra: 0 },
        Family::CrownIncidence { rows: 2, n: 3, extra: 1 },
        Family::CrownIncidence { rows: 2, n: 4, extra: 0 },
        Family::CrownIncidence { rows: 3, n: 3, extra: 0 },
        Family::CrownRadSq { rows: 2, n: 3, extra: 0 },
        Family::CrownRadSq { rows: 2, n: 4, extra: 0 },
        Family::ULayered { n: 2, m: 1 },
        Family::ULayered { n: 2, m: 2 },
        Family::ULayered { n: 3, m: 1 },
        Family::ULayered { n: 4, m: 1 },
        Family::ULayered { n: 3, m: 2 },
        Family::AGt { n: 3, t: 1, t2: 0, rows: 1 },
    ]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_corpus_generates() {
        let corpus = standard_corpus();
        for fam in &corpus {
            let c = fam.generate(FieldSpec::Rationals).unwrap();
            assert!(c.validate().passed(), "{}", fam.label());
            assert_eq!(Family::parse(&fam.label()).unwrap(), *fam);
        }
        let trees = corpus.iter().filter(|f| matches!(f, Family::RandomTree { n, .. } if *n <= 12)).count();
        assert_eq!(trees, 25);
    }

    fn strict_dims(c: &KCategory) -> usize {
        c.total_dim() - c.num_objects()
    }

    #[test]
    fn corpus_examples() {
        let q = FieldSpec::Rationals;
        let c2 = Family::Chain { n: 2 }.generate(q).unwrap();
        assert_eq!((c2.num_objects(), c2.total_dim()), (2, 3));
        let u = Family::ULayered { n: 3, m: 1 }.generate(q).unwrap();
        assert_eq!((u.num_objects(), strict_dims(&u)), (6, 9));
        let cr = Family::CrownIncidence { rows: 2, n: 3, extra: 0 }.generate(q).unwrap();
        assert_eq!((cr.num_objects(), strict_dims(&cr)), (6, 6));
    }

    #[test]
    fn every_family_validates_and_parses() {
        let q = FieldSpec::Rationals;
        let families = [
            Family::Chain { n: 4 },
            Family::Antichain { n: 3 },
            Family::RandomTree { n: 7, seed: 3 },
            Family::TreeQuiver { n: 7, seed: 3 },
            Family::CrownIncidence { rows: 3, n: 3, extra: 2 },
            Family::CrownRadSq { rows: 3, n: 4, extra: 1 },
            Family::ULayered { n: 2, m: 2 },
            Family::AGt { n: 3, t: 1, t2: 1, rows: 1 },
        ];
        for f in families {
            let c = f.generate(q).unwrap();
            assert!(c.validate().passed(), "{}", f.label());
            assert_eq!(Family::parse(&f.label()).unwrap(), f);
        }
    }

    #[test]
    fn bad_params() {
        assert!(matches!(crown_incidence(2, 2, 0), Err(Error::BadParams(_))));
        assert!(matches!(chain(0), Err(Error::BadParams(_))));
        assert!(Family::parse("crown-incidence(2,3)").is_err());
    }
}
