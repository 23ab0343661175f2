//! Nested finite full subcategories, the towers of Hochschild cohomology they
//! induce under restriction, and window-certified limits.

mod limits;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::hochschild::{ClassSpace, CochainComplex, DEFAULT_BUDGET, Variant};
use crate::kcat::corpus::Family;
use crate::kcat::{Bimodule, Inclusion, KCategory, PosetSpec, full_subcategory};
use crate::linalg::{SparseMatrix, SparseVec};

pub use limits::{LimitReport, MlReport, SesReport, SesRow, StageImages, ml_check, ses_report, truncated_lim_and_lim1};

/// Trailing stages that must agree before a limit is certified.
pub const DEFAULT_TRAILING: usize = 3;
pub const DEFAULT_WINDOW: usize = 6;

/// How the stages of a filtered family are cut out of its largest stage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FilteredKind {
    /// Stage `i` is `chain(start + i - 1)`.
    Chain { start: usize },
    /// Stage `i` is the subtree on the first `step * i` vertices of one random tree.
    Tree { step: usize, seed: u64 },
    /// As `Tree`, for a random tree quiver with zero relations.
    TreeQuiver { step: usize, seed: u64 },
    /// Stage `i` keeps positions `< min(i, n)` of every layer of `u-layered(n, m)`.
    ULayered { n: usize, m: usize },
    /// Stage `i` is the crown with `i` rows of length `n`.
    Crown { n: usize },
    /// Every stage is the same category.
    Constant(Family),
}

impl FilteredKind {
    pub fn label(&self) -> String {
        match self {
            FilteredKind::Chain { start } => format!("chain-tower({start})"),
            FilteredKind::Tree { step, seed } => format!("tree-tower({step},{seed})"),
            FilteredKind::TreeQuiver { step, seed } => format!("tree-quiver-tower({step},{seed})"),
            FilteredKind::ULayered { n, m } => format!("u-layered-tower({n},{m})"),
            FilteredKind::Crown { n } => format!("crown-tower({n})"),
            FilteredKind::Constant(f) => format!("constant-tower({})", f.label()),
        }
    }

    /// Parses the form produced by [`FilteredKind::label`].
    pub fn parse(text: &str) -> Result<FilteredKind> {
        let bad = || Error::BadParams(format!("cannot parse tower family {text:?}"));
        let (name, rest) = text.split_once('(').ok_or_else(bad)?;
        let args = rest.strip_suffix(')').ok_or_else(bad)?;
        if name.trim() == "constant-tower" {
            return Ok(FilteredKind::Constant(Family::parse(args)?));
        }
        let nums: Vec<u64> = args
            .split(',')
            .map(|s| s.trim().parse::<u64>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        let kind = match (name.trim(), nums.as_slice()) {
            ("chain-tower", &[start]) => FilteredKind::Chain { start: start as usize },
            ("tree-tower", &[step, seed]) => FilteredKind::Tree { step: step as usize, seed },
            ("tree-quiver-tower", &[step, seed]) => FilteredKind::TreeQuiver { step: step as usize, seed },
            ("u-layered-tower", &[n, m]) => FilteredKind::ULayered { n: n as usize, m: m as usize },
            ("crown-tower", &[n]) => FilteredKind::Crown { n: n as usize },
            _ => return Err(bad()),
        };
        Ok(kind)
    }

    /// The largest stage and the object names of each stage.
    fn layout(&self, stages: usize) -> Result<(Family, Vec<Vec<String>>)> {
        let top = match self {
            FilteredKind::Chain { start } => Family::Chain { n: start + stages - 1 },
            FilteredKind::Tree { step, seed } => Family::RandomTree { n: step * stages, seed: *seed },
            FilteredKind::TreeQuiver { step, seed } => Family::TreeQuiver { n: step * stages, seed: *seed },
            FilteredKind::ULayered { n, m } => Family::ULayered { n: *n, m: *m },
            FilteredKind::Crown { n } => Family::CrownIncidence { rows: stages, n: *n, extra: 0 },
            FilteredKind::Constant(f) => f.clone(),
        };
        let objects = |keep: &dyn Fn(usize) -> Vec<String>| (1..=stages).map(keep).collect::<Vec<_>>();
        let names = match self {
            FilteredKind::Chain { start } => objects(&|i| (0..start + i - 1).map(|k| format!("{k:02}")).collect()),
            FilteredKind::Tree { step, .. } | FilteredKind::TreeQuiver { step, .. } => {
                objects(&|i| (0..step * i).map(|k| format!("t{k:02}")).collect())
            }
            FilteredKind::ULayered { n, m } => {
                objects(&|i| (0..=*m).flat_map(|t| (0..i.min(*n)).map(move |l| format!("{t:02}.{l:02}"))).collect())
            }
            FilteredKind::Crown { n } => {
                objects(&|i| (0..i).flat_map(|l| (0..*n).map(move |t| format!("{l:02}.{t:02}"))).collect())
            }
            FilteredKind::Constant(_) => {
                let all = top.generate(FieldSpec::Rationals)?.objects().to_vec();
                objects(&|_| all.clone())
            }
        };
        Ok((top, names))
    }
}

/// The stages of a filtered family, each a full subcategory of the next.
#[derive(Clone, Debug)]
pub struct FilteredFamily {
    pub kind: FilteredKind,
    pub field: FieldSpec,
    pub top: KCategory,
    stages: Vec<KCategory>,
    /// `inclusions[i]`: stage `i` into stage `i + 1`.
    inclusions: Vec<Inclusion>,
    poset: Option<PosetSpec>,
}

impl FilteredFamily {
    pub fn new(kind: FilteredKind, field: FieldSpec, stages: usize) -> Result<Self> {
        if stages < 2 {
            return Err(Error::BadParams("a tower needs at least two stages".to_string()));
        }
        match kind {
            FilteredKind::Chain { start: 0 } | FilteredKind::Tree { step: 0, .. } | FilteredKind::TreeQuiver { step: 0, .. } => {
                return Err(Error::BadParams("stages must be nonempty".to_string()));
            }
            _ => {}
        }
        let (family, names) = kind.layout(stages)?;
        let presentation = family.presentation()?;
        let poset = presentation.poset().cloned();
        let top = presentation.build(field)?;
        let cats = names.iter().map(|objs| full_subcategory(&top, objs).map(|(c, _)| c)).collect::<Result<Vec<_>>>()?;
        let mut inclusions = Vec::with_capacity(stages - 1);
        for w in cats.windows(2) {
            inclusions.push(name_inclusion(&w[0], &w[1])?);
        }
        Ok(FilteredFamily { kind, field, top, stages: cats, inclusions, poset })
    }

    pub fn label(&self) -> String {
        self.kind.label()
    }

    pub fn len(&self) -> usize {
        self.stages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stages.is_empty()
    }

    pub fn stage(&self, i: usize) -> &KCategory {
        &self.stages[i]
    }

    pub fn inclusion(&self, i: usize) -> &Inclusion {
        &self.inclusions[i]
    }

    /// The order relation restricted to stage `i`, for poset families.
    pub fn stage_poset(&self, i: usize) -> Option<PosetSpec> {
        let p = self.poset.as_ref()?;
        let keep = self.stages[i].objects();
        let elements: Vec<String> = keep.to_vec();
        let order = p.order().ok()?;
        let idx: Vec<usize> = keep.iter().map(|n| order.elements.iter().position(|e| e == n)).collect::<Option<_>>()?;
        let mut covers = Vec::new();
        for (a, &ia) in idx.iter().enumerate() {
            for (b, &ib) in idx.iter().enumerate() {
                if order.less(ia, ib) {
                    covers.push((elements[a].clone(), elements[b].clone()));
                }
            }
        }
        Some(PosetSpec { elements, covers })
    }

    /// Checks that every stage is the full subcategory of the next on its
    /// objects and that object sets never shrink.
    pub fn validate(&self) -> crate::validation::Validation {
        let mut v = crate::validation::Validation::new();
        for (i, w) in self.stages.windows(2).enumerate() {
            let names: Vec<&str> = w[0].objects().iter().map(String::as_str).collect();
            match full_subcategory(&w[1], &names) {
                Ok((sub, _)) if sub.same_structure(&w[0]) => {}
                Ok(_) => v.fail(format!("stage {} is not the full subcategory of stage {}", i + 1, i + 2)),
                Err(e) => v.fail(format!("stage {} does not embed in stage {}: {e}", i + 1, i + 2)),
            }
        }
        v
    }
}

/// Inclusion of `small` into `big` by object and morphism names.
fn name_inclusion(small: &KCategory, big: &KCategory) -> Result<Inclusion> {
    let object_map = small.objects().iter().map(|o| big.object_index(o)).collect::<Result<Vec<_>>>()?;
    let morphism_map =
        small.morphisms().iter().map(|m| big.morphism_index(&m.name)).collect::<Result<Vec<_>>>()?;
    Ok(Inclusion { object_map, morphism_map })
}

/// Cohomology of one stage, with class spaces kept for the transitions.
#[derive(Clone, Debug)]
struct Stage {
    complex: CochainComplex,
    classes: Vec<ClassSpace>,
}

/// `HH^n(D_i)` for every stage and the restriction maps between consecutive stages.
#[derive(Clone, Debug)]
pub struct Tower {
    pub label: String,
    pub field: FieldSpec,
    pub variant: Variant,
    pub max_degree: usize,
    /// `dims[i][n] = dim HH^n(D_i)`.
    pub dims: Vec<Vec<usize>>,
    /// `transitions[i][n]: HH^n(D_{i+1}) -> HH^n(D_i)`.
    pub transitions: Vec<Vec<SparseMatrix>>,
    /// Index in the family of the first stage kept.
    pub first_stage: usize,
    family: FilteredFamily,
    stages: Vec<Stage>,
}

impl Tower {
    pub fn stages(&self) -> usize {
        self.dims.len()
    }

    pub fn family(&self) -> &FilteredFamily {
        &self.family
    }

    /// The restriction `HH^n(D_j) -> HH^n(D_i)` for `i <= j`, computed directly
    /// from cocycles of stage `j`.
    pub fn restriction(&self, i: usize, j: usize, n: usize) -> Result<SparseMatrix> {
        let (si, sj) = (self.family.stage(self.first_stage + i), self.family.stage(self.first_stage + j));
        restriction_matrix(si, &self.stages[i], &self.stages[j], &name_inclusion(si, sj)?, sj, n)
    }

    /// The last `window` stages as a tower of their own.
    pub fn last(&self, window: usize) -> Result<Tower> {
        let len = self.stages();
        if window < 2 || window > len {
            return Err(Error::BadParams(format!("window {window} outside 2..={len}")));
        }
        let from = len - window;
        Ok(Tower {
            dims: self.dims[from..].to_vec(),
            transitions: self.transitions[from..].to_vec(),
            first_stage: self.first_stage + from,
            stages: self.stages[from..].to_vec(),
            ..self.clone()
        })
    }

    /// The product of consecutive transitions `HH^n(D_j) -> HH^n(D_i)`.
    pub fn composite(&self, i: usize, j: usize, n: usize) -> SparseMatrix {
        let mut m = SparseMatrix::identity(self.field, self.dims[j][n]);
        for k in (i..j).rev() {
            m = self.transitions[k][n].mul(&m);
        }
        m
    }
}

pub fn build_hh_tower(fam: &FilteredFamily, nmax: usize) -> Result<Tower> {
    build_hh_tower_with_budget(fam, nmax, DEFAULT_BUDGET)
}

pub fn build_hh_tower_with_budget(fam: &FilteredFamily, nmax: usize, budget: usize) -> Result<Tower> {
    let mut stages = Vec::with_capacity(fam.len());
    for i in 0..fam.len() {
        let c = fam.stage(i);
        let complex = CochainComplex::build(c, &Bimodule::regular(c), Variant::Normalized, nmax, budget)?;
        let classes = (0..=nmax).map(|n| complex.classes(n)).collect::<Result<Vec<_>>>()?;
        stages.push(Stage { complex, classes });
    }
    let dims = stages.iter().map(|s| s.classes.iter().map(ClassSpace::dim).collect()).collect();
    let mut transitions = Vec::with_capacity(fam.len() - 1);
    for i in 0..fam.len() - 1 {
        let per = (0..=nmax)
            .map(|n| restriction_matrix(fam.stage(i), &stages[i], &stages[i + 1], fam.inclusion(i), fam.stage(i + 1), n))
            .collect::<Result<Vec<_>>>()?;
        transitions.push(per);
    }
    Ok(Tower {
        label: fam.label(),
        field: fam.field,
        variant: Variant::Normalized,
        max_degree: nmax,
        dims,
        transitions,
        first_stage: 0,
        family: fam.clone(),
        stages,
    })
}

/// Restricts each representative of `HH^n(big)` to chains of `small` and
/// classifies the result.
fn restriction_matrix(
    small: &KCategory,
    s: &Stage,
    b: &Stage,
    inc: &Inclusion,
    big: &KCategory,
    n: usize,
) -> Result<SparseMatrix> {
    let field = small.field();
    let target = &s.classes[n];
    let mut cols = Vec::with_capacity(b.classes[n].dim());
    for z in b.classes[n].representatives() {
        let values = b.complex.values(n, z);
        let mut entries = Vec::new();
        for (ri, ch) in s.complex.nerve().chains(n).iter().enumerate() {
            let morphs: Vec<usize> = ch.morphs.iter().map(|&f| inc.morphism_map[f]).collect();
            let k = b.complex.nerve().lookup(n, inc.object_map[ch.source], &morphs).expect("chains restrict");
            let Some(v) = values.get(&k) else { continue };
            let (x, y) = (ch.source, ch.target);
            for f in small.hom(x, y) {
                let parent = big.position(inc.morphism_map[f]);
                if let Some(a) = v.get(parent) {
                    entries.push((s.complex.coordinate(n, ri, small.position(f)), a.clone()));
                }
            }
        }
        let restricted = SparseVec::from_entries(entries);
        if !s.complex.is_cocycle(n, &restricted) {
            return Err(Error::NotACocycle { degree: n });
        }
        cols.push(target.classify(&restricted)?);
    }
    Ok(SparseMatrix::from_columns(field, target.dim(), &cols))
}
