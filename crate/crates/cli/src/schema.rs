//! JSON input formats. Unknown keys are rejected everywhere.

use std::collections::BTreeMap;

use hmcoh::decomp::EquivariantBimodule;
use hmcoh::group::FiniteGroup;
use hmcoh::gsmash::{ActionGenerator, GradedCategory, GroupAction};
use hmcoh::kcat::corpus::Presentation;
use hmcoh::kcat::{Arrow, Bimodule, BimoduleBuilder, CategoryBuilder, KCategory, PosetSpec, QuiverSpec};
use hmcoh::{Error, FieldSpec, Result, Scalar, SparseVec};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldJson {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
}

impl FieldJson {
    pub fn resolve(&self) -> Result<FieldSpec> {
        match (self.kind.as_str(), self.p) {
            ("Q", None) => Ok(FieldSpec::Rationals),
            ("Fp", Some(p)) => FieldSpec::prime(p),
            _ => Err(Error::InvalidInput(format!("field {:?} with p = {:?}", self.kind, self.p))),
        }
    }

    pub fn of(field: FieldSpec) -> Self {
        match field {
            FieldSpec::Rationals => FieldJson { kind: "Q".into(), p: None },
            FieldSpec::Prime(p) => FieldJson { kind: "Fp".into(), p: Some(p as u64) },
        }
    }
}

/// A coefficient, written as an integer or as a string such as `"-3/2"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Int(i64),
    Text(String),
}

impl Coeff {
    fn resolve(&self, field: FieldSpec) -> Result<Scalar> {
        match self {
            Coeff::Int(v) => Ok(field.from_i64(*v)),
            Coeff::Text(t) => field.parse(t),
        }
    }
}

/// A linear combination of named basis elements.
pub type Combination = Vec<(String, Coeff)>;

fn resolve_combination(field: FieldSpec, comb: &Combination) -> Result<Vec<(&str, Scalar)>> {
    comb.iter().map(|(n, c)| Ok((n.as_str(), c.resolve(field)?))).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomJson {
    pub source: String,
    pub target: String,
    pub basis: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identity: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompJson {
    pub left: String,
    pub right: String,
    pub result: Combination,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableJson {
    pub objects: Vec<String>,
    pub homs: Vec<HomJson>,
    #[serde(default)]
    pub comp: Vec<CompJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetJson {
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowJson {
    pub name: String,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverJson {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowJson>,
    #[serde(default)]
    pub relations: Vec<Vec<String>>,
    pub max_path_length: usize,
}

/// A category file: a field and exactly one of `table`, `poset`, `quiver`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryFile {
    pub field: FieldJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<TableJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poset: Option<PosetJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quiver: Option<QuiverJson>,
}

/// A parsed category file.
pub struct LoadedCategory {
    pub category: KCategory,
    pub poset: Option<PosetSpec>,
}

impl CategoryFile {
    pub fn from_presentation(p: &Presentation, field: FieldSpec) -> Self {
        let mut file = CategoryFile { field: FieldJson::of(field), table: None, poset: None, quiver: None };
        match p {
            Presentation::Poset(s) => file.poset = Some(PosetJson { elements: s.elements.clone(), covers: s.covers.clone() }),
            Presentation::Quiver(q) => {
                file.quiver = Some(QuiverJson {
                    vertices: q.vertices.clone(),
                    arrows: q
                        .arrows
                        .iter()
                        .map(|a| ArrowJson { name: a.name.clone(), source: a.source.clone(), target: a.target.clone() })
                        .collect(),
                    relations: q.relations.clone(),
                    max_path_length: q.max_path_length,
                })
            }
        }
        file
    }

    /// The structure constants of `c` as a `table` file.
    pub fn from_category(c: &KCategory) -> Self {
        let mut homs = Vec::new();
        for x in 0..c.num_objects() {
            for y in 0..c.num_objects() {
                let basis: Vec<String> = c.hom(x, y).map(|f| c.morphism(f).name.clone()).collect();
                if basis.is_empty() {
                    continue;
                }
                let identity = (x == y).then(|| c.morphism(c.identity(x)).name.clone());
                homs.push(HomJson { source: c.object_name(x).into(), target: c.object_name(y).into(), basis, identity });
            }
        }
        let comp = c
            .composition_table()
            .iter()
            .filter(|((f, g), _)| !c.is_identity(*f) && !c.is_identity(*g))
            .map(|((f, g), v)| {
                let (x, z) = (c.morphism(*g).source, c.morphism(*f).target);
                let start = c.hom(x, z).start;
                CompJson {
                    left: c.morphism(*f).name.clone(),
                    right: c.morphism(*g).name.clone(),
                    result: v.iter().map(|(i, a)| (c.morphism(start + i).name.clone(), Coeff::Text(a.to_string()))).collect(),
                }
            })
            .collect();
        CategoryFile {
            field: FieldJson::of(c.field()),
            table: Some(TableJson { objects: c.objects().to_vec(), homs, comp }),
            poset: None,
            quiver: None,
        }
    }

    /// Builds the category, with `field` overriding the file's field.
    pub fn load(&self, field: Option<FieldSpec>) -> Result<LoadedCategory> {
        let field = match field {
            Some(f) => f,
            None => self.field.resolve()?,
        };
        match (&self.table, &self.poset, &self.quiver) {
            (Some(t), None, None) => {
                let mut b = CategoryBuilder::new(field);
                for o in &t.objects {
                    b.object(o);
                }
                for h in &t.homs {
                    let basis: Vec<&str> = h.basis.iter().map(String::as_str).collect();
                    b.hom(&h.source, &h.target, &basis, h.identity.as_deref());
                }
                for e in &t.comp {
                    b.compose(&e.left, &e.right, &resolve_combination(field, &e.result)?);
                }
                Ok(LoadedCategory { category: b.build()?, poset: None })
            }
            (None, Some(p), None) => {
                let spec = PosetSpec { elements: p.elements.clone(), covers: p.covers.clone() };
                let category = Presentation::Poset(spec.clone()).build(field)?;
                Ok(LoadedCategory { category, poset: Some(spec) })
            }
            (None, None, Some(q)) => {
                let spec = QuiverSpec {
                    vertices: q.vertices.clone(),
                    arrows: q
                        .arrows
                        .iter()
                        .map(|a| Arrow { name: a.name.clone(), source: a.source.clone(), target: a.target.clone() })
                        .collect(),
                    relations: q.relations.clone(),
                    max_path_length: q.max_path_length,
                };
                Ok(LoadedCategory { category: Presentation::Quiver(spec).build(field)?, poset: None })
            }
            _ => Err(Error::InvalidInput("exactly one of table, poset, quiver is required".into())),
        }
    }
}

/// A finite group, by name or by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupJson {
    Trivial,
    Klein4,
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Table { names: Vec<String>, table: Vec<Vec<String>> },
}

impl GroupJson {
    pub fn resolve(&self) -> Result<FiniteGroup> {
        let positive = |n: usize| if (1..=720).contains(&n) { Ok(n) } else { Err(Error::BadParams(format!("group parameter {n}"))) };
        Ok(match self {
            GroupJson::Trivial => FiniteGroup::trivial(),
            GroupJson::Klein4 => FiniteGroup::klein4(),
            GroupJson::Cyclic(n) => FiniteGroup::cyclic(positive(*n)?),
            GroupJson::Dihedral(n) => FiniteGroup::dihedral(positive(*n)?),
            GroupJson::Symmetric(n) if *n > 6 => return Err(Error::BadParams(format!("S{n} is too large"))),
            GroupJson::Symmetric(n) => FiniteGroup::symmetric(positive(*n)?),
            GroupJson::Table { names, table } => {
                let index: BTreeMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
                let rows = table
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|n| index.get(n.as_str()).copied().ok_or_else(|| Error::UnknownElement(n.clone())))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                FiniteGroup::from_table(names.clone(), rows)?
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorJson {
    pub element: String,
    /// Objects moved by the generator; unlisted objects are fixed.
    #[serde(default)]
    pub objects: BTreeMap<String, String>,
    /// Image of every basis morphism. When absent the action is extended
    /// from objects, which requires hom spaces of dimension at most one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub morphisms: Option<BTreeMap<String, Combination>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionFile {
    pub group: GroupJson,
    pub generators: Vec<GeneratorJson>,
}

/// Local coordinates of a combination of basis morphisms, all in `hom(x, y)`.
fn local_in_hom(c: &KCategory, x: usize, y: usize, comb: &Combination) -> Result<SparseVec> {
    let field = c.field();
    let mut entries = Vec::new();
    for (name, coeff) in comb {
        let f = c.morphism_index(name)?;
        let m = c.morphism(f);
        if (m.source, m.target) != (x, y) {
            return Err(Error::InvalidAction(format!("{name} does not lie in hom({}, {})", c.object_name(x), c.object_name(y))));
        }
        entries.push((c.position(f), coeff.resolve(field)?));
    }
    Ok(SparseVec::from_entries(entries))
}

impl ActionFile {
    pub fn load(&self, c: &KCategory) -> Result<GroupAction> {
        let group = self.group.resolve()?;
        let mut thin = Vec::new();
        let mut full = Vec::new();
        for g in &self.generators {
            let element = group.index(&g.element)?;
            let mut objects: Vec<usize> = (0..c.num_objects()).collect();
            for (from, to) in &g.objects {
                objects[c.object_index(from)?] = c.object_index(to)?;
            }
            match &g.morphisms {
                None => thin.push((element, objects)),
                Some(images) => {
                    for name in images.keys() {
                        c.morphism_index(name)?;
                    }
                    let morphisms = (0..c.total_dim())
                        .map(|f| {
                            let m = c.morphism(f);
                            let image = images
                                .get(&m.name)
                                .ok_or_else(|| Error::InvalidAction(format!("no image given for {}", m.name)))?;
                            local_in_hom(c, objects[m.source], objects[m.target], image)
                        })
                        .collect::<Result<Vec<_>>>()?;
                    full.push(ActionGenerator { element, objects, morphisms });
                }
            }
        }
        let action = match (thin.is_empty(), full.is_empty()) {
            (_, true) => GroupAction::thin(c, group, &thin)?,
            (true, false) => GroupAction::from_generators(c, group, &full)?,
            _ => return Err(Error::InvalidAction("either every generator lists morphism images or none does".into())),
        };
        let v = action.validate(c);
        if v.passed() { Ok(action) } else { Err(Error::InvalidAction(v.failures.join("; "))) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentJson {
    pub source: String,
    pub target: String,
    pub degree: String,
    pub basis: Vec<Combination>,
}

/// A grading: either a degree per basis morphism (unlisted morphisms have
/// degree one) or explicit component bases.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GradingFile {
    pub group: GroupJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<ComponentJson>>,
}

impl GradingFile {
    pub fn load(&self, c: &KCategory) -> Result<GradedCategory> {
        let group = self.group.resolve()?;
        match (&self.degrees, &self.components) {
            (Some(degrees), None) => {
                let mut per = vec![group.unit(); c.total_dim()];
                for (name, g) in degrees {
                    per[c.morphism_index(name)?] = group.index(g)?;
                }
                GradedCategory::by_basis(c.clone(), group, &per)
            }
            (None, Some(components)) => {
                let n = c.num_objects();
                let mut comps = vec![vec![Vec::new(); group.order()]; n * n];
                for comp in components {
                    let (x, y) = (c.object_index(&comp.source)?, c.object_index(&comp.target)?);
                    let s = group.index(&comp.degree)?;
                    for b in &comp.basis {
                        comps[x * n + y][s].push(local_in_hom(c, x, y, b).map_err(|e| Error::InvalidGrading(e.to_string()))?);
                    }
                }
                GradedCategory::new(c.clone(), group, comps)
            }
            _ => Err(Error::InvalidGrading("exactly one of degrees, components is required".into())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementJson {
    pub name: String,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LeftJson {
    pub morphism: String,
    pub element: String,
    pub result: Combination,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RightJson {
    pub element: String,
    pub morphism: String,
    pub result: Combination,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TauJson {
    pub element: String,
    pub images: BTreeMap<String, Combination>,
}

/// A bimodule, either `regular` or by its action tables, optionally with
/// `τ` on group generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    #[serde(default)]
    pub regular: bool,
    #[serde(default)]
    pub elements: Vec<ElementJson>,
    #[serde(default)]
    pub left: Vec<LeftJson>,
    #[serde(default)]
    pub right: Vec<RightJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<Vec<TauJson>>,
}

impl ModuleFile {
    pub fn load(&self, c: &KCategory) -> Result<Bimodule> {
        if self.regular {
            if !self.elements.is_empty() || !self.left.is_empty() || !self.right.is_empty() {
                return Err(Error::InvalidInput("a regular module lists no tables".into()));
            }
            return Ok(Bimodule::regular(c));
        }
        let field = c.field();
        let mut b = BimoduleBuilder::new();
        for e in &self.elements {
            b.element(&e.name, &e.source, &e.target);
        }
        for l in &self.left {
            b.left(&l.morphism, &l.element, &resolve_combination(field, &l.result)?);
        }
        for r in &self.right {
            b.right(&r.element, &r.morphism, &resolve_combination(field, &r.result)?);
        }
        b.build(c)
    }

    pub fn load_equivariant(&self, c: &KCategory, action: &GroupAction) -> Result<EquivariantBimodule> {
        let m = self.load(c)?;
        let Some(tau) = &self.tau else {
            return if self.regular {
                Ok(EquivariantBimodule::regular(c, action))
            } else {
                EquivariantBimodule::with_trivial_tau(c, m, action.clone())
            };
        };
        let group = action.group();
        let gens = tau
            .iter()
            .map(|t| {
                let g = group.index(&t.element)?;
                let images = (0..m.total_dim())
                    .map(|e| {
                        let el = m.element(e);
                        let (x, y) = (action.object(g, el.source), action.object(g, el.target));
                        let image =
                            t.images.get(&el.name).ok_or_else(|| Error::InvalidAction(format!("no τ image for {}", el.name)))?;
                        let mut entries = Vec::new();
                        for (name, coeff) in image {
                            let k = m.element_index(name)?;
                            let ek = m.element(k);
                            if (ek.source, ek.target) != (x, y) {
                                return Err(Error::InvalidAction(format!("{name} lies in the wrong space for τ of {}", el.name)));
                            }
                            entries.push((m.position(k), coeff.resolve(c.field())?));
                        }
                        Ok(SparseVec::from_entries(entries))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok((g, images))
            })
            .collect::<Result<Vec<_>>>()?;
        EquivariantBimodule::from_generators(c, m, action.clone(), &gens)
    }
}

pub fn parse<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("{what}: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_keys_are_rejected() {
        let ok = r#"{"field": {"kind": "Q"}, "poset": {"elements": ["a", "b"], "covers": [["a", "b"]]}}"#;
        let file: CategoryFile = parse(ok, "category").unwrap();
        assert_eq!(file.load(None).unwrap().category.total_dim(), 3);
        let bad = r#"{"field": {"kind": "Q"}, "poset": {"elements": [], "covers": []}, "colour": 1}"#;
        assert!(parse::<CategoryFile>(bad, "category").is_err());
        let two = r#"{"field": {"kind": "Q"}, "poset": {"elements": ["a"], "covers": []}, "table": {"objects": [], "homs": []}}"#;
        assert!(parse::<CategoryFile>(two, "category").unwrap().load(None).is_err());
    }

    #[test]
    fn table_round_trip() {
        let pres = hmcoh::kcat::corpus::Family::CrownRadSq { rows: 2, n: 3, extra: 0 }.presentation().unwrap();
        let c = pres.build(FieldSpec::Rationals).unwrap();
        let file = CategoryFile::from_category(&c);
        let text = serde_json::to_string(&file).unwrap();
        let back: CategoryFile = parse(&text, "category").unwrap();
        assert!(back.load(None).unwrap().category.same_structure(&c));
    }

    #[test]
    fn groups_and_fields() {
        let g: GroupJson = parse(r#"{"table": {"names": ["1", "t"], "table": [["1", "t"], ["t", "1"]]}}"#, "group").unwrap();
        assert_eq!(g.resolve().unwrap().order(), 2);
        let s: GroupJson = parse(r#"{"symmetric": 3}"#, "group").unwrap();
        assert_eq!(s.resolve().unwrap().order(), 6);
        assert_eq!(parse::<GroupJson>(r#""klein4""#, "group").unwrap().resolve().unwrap().order(), 4);
        assert!(FieldJson { kind: "Fp".into(), p: Some(4) }.resolve().is_err());
    }
}
