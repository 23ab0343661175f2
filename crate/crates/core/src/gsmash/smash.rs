use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use super::{GradedCategory, GroupAction};
use crate::error::{Error, Result};
use crate::kcat::{CategoryParts, Inclusion, KCategory, Morphism};

/// `D = C # kG` with `hom_D(x, y) = ⊕_s hom_C(sx, y)`; the pair `(f, s)` with
/// `f: sx -> y` composes as `(f, s)∘(g, t) = (f∘s(g), st)`. For object-fixing
/// actions this is `hom_C(x, y) ⊗ kG`.
#[derive(Clone, Debug)]
pub struct SmashProduct {
    pub category: KCategory,
    pub grading: GradedCategory,
    /// `C -> D`, `f ↦ (f, 1)`.
    pub inclusion: Inclusion,
    pub action: GroupAction,
    /// `parts[d] = (f, s)` for each morphism `d` of `D`.
    parts: Vec<(usize, usize)>,
    index: BTreeMap<(usize, usize), usize>,
}

impl SmashProduct {
    /// The morphism `(f, s)` of `D`, where `f: s·x -> y` in `C`.
    pub fn element(&self, f: usize, s: usize) -> usize {
        self.index[&(f, s)]
    }

    /// `(f, s)` for a morphism of `D`.
    pub fn parts(&self, d: usize) -> (usize, usize) {
        self.parts[d]
    }

    /// `(id_{sx}, s)` in `hom_D(x, sx)`.
    pub fn group_element_at(&self, c: &KCategory, x: usize, s: usize) -> usize {
        self.element(c.identity(self.action.object(s, x)), s)
    }
}

pub fn smash_product(c: &KCategory, action: &GroupAction) -> Result<SmashProduct> {
    let v = action.validate(c);
    if !v.passed() {
        return Err(Error::InvalidAction(v.failures.join("; ")));
    }
    let g = action.group();
    let n = c.num_objects();
    let field = c.field();
    let mut parts = CategoryParts { objects: c.objects().to_vec(), ..Default::default() };
    let mut raw: Vec<(usize, usize)> = Vec::new();
    let mut raw_index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    // raw_blocks[(x, y, s)] = first raw id of the block hom_C(sx, y)
    let mut raw_blocks: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
    for s in 0..g.order() {
        for x in 0..n {
            for y in 0..n {
                let sx = action.object(s, x);
                raw_blocks.insert((x, y, s), raw.len());
                for f in c.hom(sx, y) {
                    let name = if s == 0 { c.morphism(f).name.clone() } else { format!("{}#{}", c.morphism(f).name, g.name(s)) };
                    raw_index.insert((f, s), parts.morphisms.len());
                    parts.morphisms.push(Morphism { name, source: x, target: y });
                    raw.push((f, s));
                }
            }
        }
    }
    parts.identities = (0..n).map(|x| raw_index[&(c.identity(x), 0)]).collect();
    // (f, s): y -> z with f: sy -> z, and (h, t): x -> y with h: tx -> y
    for (ri, &(f, s)) in raw.iter().enumerate() {
        let (y, z) = (parts.morphisms[ri].source, parts.morphisms[ri].target);
        for x in 0..n {
            for t in 0..g.order() {
                let tx = action.object(t, x);
                let block = raw_blocks[&(x, y, t)];
                let st = g.mul(s, t);
                let stx = action.object(st, x);
                let target_block = raw_blocks[&(x, z, st)];
                for (hi, h) in c.hom(tx, y).enumerate() {
                    let sh = action.morphism(s, h);
                    let sy = action.object(s, y);
                    let p = c.compose(stx, sy, z, &c.basis_vec(f), sh);
                    if !p.is_zero() {
                        parts.comp.insert((ri, block + hi), p.map_indices(|i| target_block + i));
                    }
                }
            }
        }
    }
    let category = KCategory::from_parts(field, parts.clone())?;
    let mut index = BTreeMap::new();
    let mut dparts = alloc::vec![(0, 0); category.total_dim()];
    let mut degrees = alloc::vec![0; category.total_dim()];
    for (ri, m) in parts.morphisms.iter().enumerate() {
        let d = category.morphism_index(&m.name)?;
        index.insert(raw[ri], d);
        dparts[d] = raw[ri];
        degrees[d] = raw[ri].1;
    }
    let grading = GradedCategory::by_basis(category.clone(), g.clone(), &degrees)?;
    let inclusion = Inclusion {
        object_map: (0..n).collect(),
        morphism_map: (0..c.total_dim()).map(|f| index[&(f, 0)]).collect(),
    };
    Ok(SmashProduct { category, grading, inclusion, action: action.clone(), parts: dparts, index })
}
