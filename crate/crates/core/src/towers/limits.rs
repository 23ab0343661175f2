use alloc::vec::Vec;

use super::Tower;
use crate::error::{Error, Result};
use crate::linalg::{SparseMatrix, SparseVec, Subspace, rank};

/// `dim Im(HH^n(D_j) -> HH^n(D_i))` for `j = i, i + 1, ..` up to the last stage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageImages {
    pub stage: usize,
    pub dims: Vec<usize>,
    /// First `j` from which the image no longer shrinks, if that holds over
    /// at least the trailing number of stages.
    pub stable_from: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MlReport {
    pub degree: usize,
    pub trailing: usize,
    pub images: Vec<StageImages>,
}

impl MlReport {
    /// Stages followed by at least `trailing` later stages.
    pub fn judged(&self) -> usize {
        self.images.len().saturating_sub(self.trailing)
    }

    pub fn holds(&self) -> bool {
        self.images[..self.judged()].iter().all(|s| s.stable_from.is_some())
    }
}

pub fn ml_check(t: &Tower, n: usize, trailing: usize) -> Result<MlReport> {
    let stages = t.stages();
    if trailing == 0 || stages < trailing + 1 {
        return Err(Error::WindowTooShort { stages, trailing });
    }
    let images = (0..stages)
        .map(|i| {
            let dims: Vec<usize> = (i..stages).map(|j| rank(&t.composite(i, j, n))).collect();
            let last = *dims.last().expect("nonempty");
            let from = dims.iter().rposition(|&d| d != last).map_or(0, |k| k + 1);
            let stable = (dims.len() - from >= trailing).then_some(i + from);
            StageImages { stage: i, dims, stable_from: stable }
        })
        .collect();
    Ok(MlReport { degree: n, trailing, images })
}

/// Limit and first derived limit of one degree over a finite window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitReport {
    pub degree: usize,
    pub lim: usize,
    pub lim1: usize,
    /// Dimensions of the stable images entering the shift-difference map.
    pub stable_dims: Vec<usize>,
    pub ml: MlReport,
    /// The last `trailing` stages agree: equal dimensions, invertible transitions.
    pub tail_constant: bool,
    pub certified: bool,
}

/// `lim` and `lim^1` as kernel and cokernel of
/// `⊕ S_i -> ⊕ S_i, (s_i) ↦ (s_i - t_i s_{i+1})` on the stable images
/// `S_i = Im(HH^n(D_last) -> HH^n(D_i))`. The judged stages always enter; the
/// tail stages enter when the tail is constant, which makes them stable.
pub fn truncated_lim_and_lim1(t: &Tower, n: usize, trailing: usize) -> Result<LimitReport> {
    let ml = ml_check(t, n, trailing)?;
    let stages = t.stages();
    let field = t.field;
    let tail = stages - trailing;
    let tail_constant = (tail..stages).all(|i| t.dims[i][n] == t.dims[tail][n])
        && (tail..stages - 1).all(|i| rank(&t.transitions[i][n]) == t.dims[i][n]);
    let k = if tail_constant { stages } else { ml.judged() };
    let spaces: Vec<Subspace> =
        (0..k).map(|i| Subspace::span(field, t.dims[i][n], t.composite(i, stages - 1, n).columns())).collect();
    let stable_dims: Vec<usize> = spaces.iter().map(Subspace::dim).collect();
    let offsets: Vec<usize> = stable_dims
        .iter()
        .scan(0, |acc, &d| {
            let o = *acc;
            *acc += d;
            Some(o)
        })
        .collect();
    let domain: usize = stable_dims.iter().sum();
    let codomain: usize = stable_dims[..k - 1].iter().sum();
    let mut triplets = Vec::new();
    for i in 0..k - 1 {
        for a in 0..stable_dims[i] {
            triplets.push((offsets[i] + a, offsets[i] + a, field.one()));
        }
        for (b, v) in spaces[i + 1].basis().iter().enumerate() {
            let image = t.transitions[i][n].mul_vec(v);
            let coords: SparseVec = spaces[i].coordinates(&image).expect("transitions preserve stable images");
            for (a, x) in coords.iter() {
                triplets.push((offsets[i] + a, offsets[i + 1] + b, -x.clone()));
            }
        }
    }
    let delta = SparseMatrix::from_triplets(field, codomain, domain, triplets);
    let r = rank(&delta);
    let certified = ml.holds() && tail_constant;
    Ok(LimitReport { degree: n, lim: domain - r, lim1: codomain - r, stable_dims, ml, tail_constant, certified })
}

/// `HH^n(lim D) ≅ lim HH^n ⊕ lim^1 HH^{n-1}` read off the window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SesRow {
    pub degree: usize,
    pub lim: usize,
    pub lim1_prev: usize,
    pub inferred: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SesReport {
    pub label: alloc::string::String,
    pub stages: usize,
    pub limits: Vec<LimitReport>,
    pub rows: Vec<SesRow>,
}

impl SesReport {
    pub fn inferred(&self) -> Option<Vec<usize>> {
        self.rows.iter().map(|r| r.inferred).collect()
    }
}

pub fn ses_report(t: &Tower, trailing: usize) -> Result<SesReport> {
    let limits = (0..=t.max_degree).map(|n| truncated_lim_and_lim1(t, n, trailing)).collect::<Result<Vec<_>>>()?;
    let rows = (0..=t.max_degree)
        .map(|n| {
            let cur = &limits[n];
            let prev = n.checked_sub(1).map(|p| &limits[p]);
            let lim1_prev = prev.map_or(0, |p| p.lim1);
            let ok = cur.certified && prev.is_none_or(|p| p.certified);
            SesRow { degree: n, lim: cur.lim, lim1_prev, inferred: ok.then_some(cur.lim + lim1_prev) }
        })
        .collect();
    Ok(SesReport { label: t.label.clone(), stages: t.stages(), limits, rows })
}
