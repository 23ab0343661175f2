//! Dispatch of one command to the library, producing a report.

use std::fs;
use std::path::{Path, PathBuf};

use hmcoh::decomp::{
    EquivariantBimodule, decomposition_check, bound_check, collapse_check, e2_page, phi_check, shapiro_components,
};
use hmcoh::gsmash::{
    GradedCategory, GroupAction, PivotOrder, coinvariants, galois_check_with, properties_check, smash_product,
    strongly_graded_check,
};
use hmcoh::hochschild::{ChainComplex, CochainComplex, Variant, center, order_complex_cohomology};
use hmcoh::kcat::corpus::{Family, standard_corpus};
use hmcoh::kcat::{Bimodule, KCategory};
use hmcoh::linalg::rank;
use hmcoh::towers::{FilteredFamily, FilteredKind, build_hh_tower_with_budget, ses_report};
use hmcoh::{Error, FieldSpec, Result, SparseMatrix};

use crate::args::{Cli, Common, Complex, Pivot, Verb};
use crate::report::{
    Body, Check, LimitJson, PairJson, PhiJson, Regime, Report, Row, ShapiroJson, StageJson, Status, WindowMeta, WitnessJson,
};
use crate::schema::{ActionFile, CategoryFile, GradingFile, LoadedCategory, ModuleFile, parse};

/// Kebab-case name of an error variant, as written in error reports.
pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::InvalidInput(_) => "invalid-input",
        Error::BadParams(_) => "bad-params",
        Error::UnknownObject(_) => "unknown-object",
        Error::UnknownElement(_) => "unknown-element",
        Error::CycleDetected(_) => "cycle-detected",
        Error::NotFiniteDimensional(_) => "not-finite-dimensional",
        Error::NotASourceOrSink(_) => "not-a-source-or-sink",
        Error::InclusionViolation { .. } => "inclusion-violation",
        Error::DimensionOverflow { .. } => "budget-exceeded",
        Error::InvalidCategory(_) => "invalid-category",
        Error::InvalidBimodule(_) => "invalid-bimodule",
        Error::InvalidAction(_) => "invalid-action",
        Error::InvalidGrading(_) => "invalid-grading",
        Error::NotStronglyGraded { .. } => "not-strongly-graded",
        Error::TensorQuotientDegenerate(_) => "tensor-quotient-degenerate",
        Error::NotACocycle { .. } => "not-a-cocycle",
        Error::NotInvariant(_) => "not-invariant",
        Error::CharDividesOrder { .. } => "char-divides-order",
        Error::WindowTooShort { .. } => "window-too-short",
    }
}

pub fn error_status(e: &Error) -> Status {
    match e {
        Error::DimensionOverflow { .. } => Status::BudgetExceeded,
        Error::NotStronglyGraded { .. }
        | Error::TensorQuotientDegenerate(_)
        | Error::NotACocycle { .. }
        | Error::NotInvariant(_) => Status::CheckFailed,
        _ => Status::InputError,
    }
}

struct Ctx<'a> {
    common: &'a Common,
    field: Option<FieldSpec>,
    regime: Regime,
    inputs: Vec<String>,
}

impl Ctx<'_> {
    fn read(&mut self, path: &Path, what: &str) -> Result<String> {
        self.inputs.push(path.display().to_string());
        fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{what} {}: {e}", path.display())))
    }

    fn category(&mut self, path: &Path) -> Result<LoadedCategory> {
        let text = self.read(path, "category")?;
        let file: CategoryFile = parse(&text, "category")?;
        let loaded = file.load(self.field)?;
        let v = loaded.category.validate();
        if !v.passed() {
            return Err(Error::InvalidCategory(v.failures.join("; ")));
        }
        self.regime.field = Some(loaded.category.field().label());
        Ok(loaded)
    }

    fn action(&mut self, path: &Path, c: &KCategory) -> Result<GroupAction> {
        let text = self.read(path, "action")?;
        parse::<ActionFile>(&text, "action")?.load(c)
    }

    fn grading(&mut self, path: &Path, c: &KCategory) -> Result<GradedCategory> {
        let text = self.read(path, "grading")?;
        parse::<GradingFile>(&text, "grading")?.load(c)
    }

    fn module_file(&mut self, path: &Path) -> Result<ModuleFile> {
        let text = self.read(path, "module")?;
        parse(&text, "module")
    }

    fn module(&mut self, path: Option<&PathBuf>, c: &KCategory) -> Result<Bimodule> {
        let m = match path {
            Some(p) => self.module_file(p)?.load(c)?,
            None => Bimodule::regular(c),
        };
        let v = m.validate(c);
        if !v.passed() {
            return Err(Error::InvalidBimodule(v.failures.join("; ")));
        }
        Ok(m)
    }

    fn equivariant(&mut self, path: Option<&PathBuf>, c: &KCategory, action: &GroupAction) -> Result<EquivariantBimodule> {
        let m = match path {
            Some(p) => self.module_file(p)?.load_equivariant(c, action)?,
            None => EquivariantBimodule::regular(c, action),
        };
        let v = m.validate(c);
        if !v.passed() {
            return Err(Error::InvalidBimodule(v.failures.join("; ")));
        }
        Ok(m)
    }

    fn degrees(&mut self, max_degree: usize, complex: &str) {
        self.regime.max_degree = Some(max_degree);
        self.regime.complex = Some(complex.to_string());
    }

    fn budgeted(&mut self, max_degree: usize, complex: &str) {
        self.degrees(max_degree, complex);
        self.regime.budget = Some(self.common.budget);
    }
}

/// Runs one command. Errors become reports with the matching status.
pub fn run(cli: &Cli) -> Report {
    let mut ctx = Ctx { common: &cli.common, field: None, regime: Regime::default(), inputs: Vec::new() };
    let result = cli
        .common
        .field
        .as_deref()
        .map(parse_field)
        .transpose()
        .and_then(|f| {
            ctx.field = f;
            dispatch(&mut ctx, &cli.verb)
        });
    let (status, body) = match result {
        Ok(pair) => pair,
        Err(e) => (error_status(&e), Body::Error { error: error_kind(&e).to_string(), message: e.to_string() }),
    };
    Report { verb: cli.verb.name().to_string(), status, inputs: ctx.inputs, regime: ctx.regime, body }
}

pub fn parse_field(text: &str) -> Result<FieldSpec> {
    let t = text.trim();
    if t == "Q" {
        return Ok(FieldSpec::Rationals);
    }
    let p = t
        .strip_prefix('F')
        .and_then(|p| p.parse::<u64>().ok())
        .ok_or_else(|| Error::InvalidInput(format!("field {text:?}: expected Q or F<p>")))?;
    FieldSpec::prime(p)
}

fn status_of(ok: bool) -> Status {
    if ok { Status::Ok } else { Status::CheckFailed }
}

fn check(name: &str, v: hmcoh::validation::Validation) -> Check {
    Check { name: name.to_string(), passed: v.passed(), failures: v.failures }
}

fn variant(c: Complex) -> Variant {
    match c {
        Complex::Normalized => Variant::Normalized,
        Complex::Full => Variant::Full,
    }
}

fn rows(report: &hmcoh::decomp::ComparisonReport) -> Vec<Row> {
    report.rows.iter().map(|r| Row { degree: r.degree, columns: r.columns.clone(), holds: r.holds }).collect()
}

fn dispatch(ctx: &mut Ctx, verb: &Verb) -> Result<(Status, Body)> {
    let budget = ctx.common.budget;
    match verb {
        Verb::Validate { category, module, action, grading } => {
            let text = ctx.read(category, "category")?;
            let c = parse::<CategoryFile>(&text, "category")?.load(ctx.field)?.category;
            ctx.regime.field = Some(c.field().label());
            let mut checks = vec![check("category", c.validate())];
            if checks[0].passed {
                let mut act = None;
                if let Some(p) = action {
                    let a = ctx.action(p, &c)?;
                    checks.push(check("action", a.validate(&c)));
                    act = Some(a);
                }
                if let Some(p) = grading {
                    checks.push(check("grading", ctx.grading(p, &c)?.validate()));
                }
                if let Some(p) = module {
                    let file = ctx.module_file(p)?;
                    let m = file.load(&c)?;
                    checks.push(check("module", m.validate(&c)));
                    if let Some(a) = act.as_ref().filter(|_| checks.iter().all(|k| k.passed)) {
                        checks.push(check("equivariant module", file.load_equivariant(&c, a)?.validate(&c)));
                    }
                }
            }
            let ok = checks.iter().all(|k| k.passed);
            Ok((status_of(ok), Body::Validation { checks }))
        }
        Verb::Cohomology { category, module, max_degree, complex } => {
            let c = ctx.category(category)?.category;
            let m = ctx.module(module.as_ref(), &c)?;
            let v = variant(*complex);
            ctx.budgeted(*max_degree, v.label());
            let dims = CochainComplex::build(&c, &m, v, *max_degree, budget)?.cohomology().dims;
            Ok((Status::Ok, Body::Dims { degrees: (0..=*max_degree).collect(), dims }))
        }
        Verb::Homology { category, module, max_degree, complex } => {
            let c = ctx.category(category)?.category;
            let m = ctx.module(module.as_ref(), &c)?;
            let v = variant(*complex);
            ctx.budgeted(*max_degree, v.label());
            let dims = ChainComplex::build(&c, &m, v, *max_degree, budget)?.homology().dims;
            Ok((Status::Ok, Body::Dims { degrees: (0..=*max_degree).collect(), dims }))
        }
        Verb::Center { category } => {
            let c = ctx.category(category)?.category;
            ctx.budgeted(0, Variant::Normalized.label());
            let hh0 = CochainComplex::build(&c, &Bimodule::regular(&c), Variant::Normalized, 0, budget)?.cohomology().dims[0];
            let center_dim = center(&c).dim();
            Ok((status_of(center_dim == hh0), Body::Center { center_dim, hh0 }))
        }
        Verb::Oracle { category, max_degree } => {
            let loaded = ctx.category(category)?;
            let poset = loaded.poset.ok_or_else(|| Error::InvalidInput("oracle needs a poset category file".into()))?;
            ctx.regime.max_degree = Some(*max_degree);
            ctx.regime.complex = Some("order-complex".into());
            let dims = order_complex_cohomology(&poset, loaded.category.field(), *max_degree)?;
            Ok((Status::Ok, Body::Dims { degrees: (0..=*max_degree).collect(), dims }))
        }
        Verb::Smash { category, action, out } => {
            let c = ctx.category(category)?.category;
            let a = ctx.action(action, &c)?;
            let sp = smash_product(&c, &a)?;
            let d = &sp.category;
            let g = sp.grading.group();
            let n = d.num_objects();
            let degree_dims = (0..g.order())
                .map(|s| {
                    let dim = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).map(|(x, y)| sp.grading.component(x, y, s).len()).sum();
                    (g.name(s).to_string(), dim)
                })
                .collect();
            let coinvariants_match = coinvariants(&sp.grading)?.category.same_structure(&c);
            let strongly_graded = strongly_graded_check(&sp.grading).holds;
            let written = match out {
                Some(p) => {
                    write_json(p, &CategoryFile::from_category(d))?;
                    Some(p.display().to_string())
                }
                None => None,
            };
            let body = Body::Smash {
                group_order: g.order(),
                objects: n,
                total_dim: d.total_dim(),
                degree_dims,
                coinvariants_match,
                strongly_graded,
                written,
            };
            Ok((status_of(coinvariants_match && strongly_graded), body))
        }
        Verb::Galois { category, action, grading, pivot } => {
            let c = ctx.category(category)?.category;
            let graded = match (action, grading) {
                (Some(p), _) => smash_product(&c, &ctx.action(p, &c)?)?.grading,
                (None, Some(p)) => ctx.grading(p, &c)?,
                (None, None) => return Err(Error::InvalidInput("galois needs --action or --grading".into())),
            };
            galois(&graded, *pivot)
        }
        Verb::Decompose { category, action, module, max_degree } => {
            let c = ctx.category(category)?.category;
            let a = ctx.action(action, &c)?;
            let m = ctx.equivariant(module.as_ref(), &c, &a)?;
            ctx.degrees(*max_degree, Variant::Normalized.label());
            let sp = smash_product(&c, &a)?;
            let cmp = decomposition_check(&c, &sp, &m, *max_degree)?;
            let group = a.group();
            let phi: Vec<PhiJson> = (0..group.order())
                .map(|g| {
                    let r = phi_check(&c, &sp, &m, g)?;
                    Ok(PhiJson {
                        element: group.name(g).to_string(),
                        domain_dim: r.domain_dim,
                        codomain_dim: r.codomain_dim,
                        rank: r.rank,
                        bijective: r.bijective,
                        linear: r.linear,
                    })
                })
                .collect::<Result<_>>()?;
            let shapiro: Vec<ShapiroJson> = shapiro_components(&c, &sp, &m, 0, 2)?
                .into_iter()
                .map(|(g, r)| ShapiroJson { element: group.name(g).to_string(), coinduced: r.coinduced, restricted: r.restricted })
                .collect();
            let ok = cmp.passed() && phi.iter().all(|p| p.bijective && p.linear) && shapiro.iter().all(|s| s.coinduced == s.restricted);
            let columns = vec!["H(C, M#kG)".into(), "sum H(C, M_[g])".into(), "sum [G:Z(g)] H(C, M.g)".into()];
            Ok((status_of(ok), Body::Decompose { columns, rows: rows(&cmp), phi, shapiro }))
        }
        Verb::E2 { category, action, module, max_degree } => {
            let c = ctx.category(category)?.category;
            let a = ctx.action(action, &c)?;
            let m = ctx.equivariant(module.as_ref(), &c, &a)?;
            ctx.degrees(*max_degree, Variant::Normalized.label());
            let page = e2_page(&c, &m, *max_degree, *max_degree)?;
            let totals = (0..=*max_degree).map(|n| page.total(n)).collect();
            Ok((Status::Ok, Body::E2 { dims: page.dims, totals }))
        }
        Verb::Collapse { category, action, max_degree } => {
            let c = ctx.category(category)?.category;
            let a = ctx.action(action, &c)?;
            ctx.degrees(*max_degree, Variant::Normalized.label());
            let sp = smash_product(&c, &a)?;
            let n = Bimodule::regular(&sp.category);
            let p = c.field().characteristic();
            let divides = p != 0 && a.group().order() as u64 % p == 0;
            let (mode, columns, cmp) = if divides {
                ("e2-bound", vec!["H(C#kG, N)".into(), "sum E2".into()], bound_check(&c, &sp, &n, *max_degree)?)
            } else {
                ("invariants", vec!["H(C#kG, N)".into(), "H(C, N)^G".into()], collapse_check(&c, &sp, &n, *max_degree)?)
            };
            Ok((status_of(cmp.passed()), Body::Collapse { mode: mode.into(), columns, rows: rows(&cmp) }))
        }
        Verb::Tower { family, stages, window, max_degree } => {
            ctx.inputs.push(family.clone());
            let field = ctx.field.unwrap_or(FieldSpec::Rationals);
            ctx.regime.field = Some(field.label());
            ctx.budgeted(*max_degree, Variant::Normalized.label());
            let window = window.unwrap_or(*stages);
            let trailing = window / 2;
            ctx.regime.window = Some(WindowMeta { stages: *stages, window, trailing });
            let fam = FilteredFamily::new(FilteredKind::parse(family)?, field, *stages)?;
            let v = fam.validate();
            if !v.passed() {
                return Err(Error::InvalidCategory(v.failures.join("; ")));
            }
            let tower = build_hh_tower_with_budget(&fam, *max_degree, budget)?.last(window)?;
            tower_body(&tower, trailing)
        }
        Verb::Gen { family, corpus, out } => {
            let field = ctx.field.unwrap_or(FieldSpec::Rationals);
            ctx.regime.field = Some(field.label());
            let written = if *corpus {
                fs::create_dir_all(out).map_err(|e| Error::InvalidInput(format!("{}: {e}", out.display())))?;
                standard_corpus()
                    .iter()
                    .map(|f| {
                        let path = out.join(file_name(&f.label()));
                        write_json(&path, &CategoryFile::from_presentation(&f.presentation()?, field))?;
                        Ok(path.display().to_string())
                    })
                    .collect::<Result<Vec<_>>>()?
            } else {
                let label = family.as_deref().ok_or_else(|| Error::InvalidInput("gen needs a family or --corpus".into()))?;
                let f = Family::parse(label)?;
                write_json(out, &CategoryFile::from_presentation(&f.presentation()?, field))?;
                vec![out.display().to_string()]
            };
            Ok((Status::Ok, Body::Gen { written }))
        }
    }
}

fn galois(graded: &GradedCategory, pivot: Pivot) -> Result<(Status, Body)> {
    let pivot_label = match pivot {
        Pivot::Forward => "forward",
        Pivot::Reverse => "reverse",
    };
    let sg = strongly_graded_check(graded);
    if let Some(w) = sg.witness {
        let witness = WitnessJson {
            object: w.source,
            degree: w.right,
            target: w.target,
            left: w.left,
            achieved: w.achieved,
            required: w.required,
        };
        let body = Body::Galois {
            strongly_graded: false,
            witness: Some(witness),
            pivot: pivot_label.into(),
            pairs: Vec::new(),
            rl_terms: 0,
            properties: Vec::new(),
            failures: Vec::new(),
        };
        return Ok((Status::CheckFailed, body));
    }
    let order = match pivot {
        Pivot::Forward => PivotOrder::Forward,
        Pivot::Reverse => PivotOrder::Reverse,
    };
    let cert = galois_check_with(graded, order)?;
    let d = graded.category();
    let mut failures = Vec::new();
    let pairs = cert
        .pairs
        .iter()
        .filter(|p| p.quotient.dim() > 0)
        .map(|p| {
            let (x, y) = (p.quotient.source, p.quotient.target);
            let id = SparseMatrix::identity(d.field(), p.beta.cols());
            if p.beta.rows() != p.beta.cols() || p.beta_prime.mul(&p.beta) != id || p.beta.mul(&p.beta_prime) != id {
                failures.push(format!("beta is not inverted by beta' at ({}, {})", d.object_name(x), d.object_name(y)));
            }
            PairJson {
                source: d.object_name(x).to_string(),
                target: d.object_name(y).to_string(),
                tensor_dim: p.quotient.dim(),
                beta_rank: rank(&p.beta),
            }
        })
        .collect();
    let props = properties_check(&cert);
    failures.extend(props.failures.iter().cloned());
    let rl_terms = cert.rl.iter().flatten().map(Vec::len).sum();
    let ok = failures.is_empty() && props.all_passed();
    let body = Body::Galois {
        strongly_graded: true,
        witness: None,
        pivot: pivot_label.into(),
        pairs,
        rl_terms,
        properties: props.passed.to_vec(),
        failures,
    };
    Ok((status_of(ok), body))
}

fn tower_body(tower: &hmcoh::towers::Tower, trailing: usize) -> Result<(Status, Body)> {
    let ses = ses_report(tower, trailing)?;
    let fam = tower.family();
    let stages = (0..tower.stages())
        .map(|i| StageJson {
            stage: tower.first_stage + i,
            objects: fam.stage(tower.first_stage + i).num_objects(),
            dims: tower.dims[i].clone(),
        })
        .collect();
    let transition_ranks = tower.transitions.iter().map(|per| per.iter().map(rank).collect()).collect();
    let limits: Vec<LimitJson> = ses
        .limits
        .iter()
        .map(|l| LimitJson {
            degree: l.degree,
            lim: l.lim,
            lim1: l.lim1,
            stable_dims: l.stable_dims.clone(),
            stable_from: l.ml.images.iter().map(|s| s.stable_from).collect(),
            ml_holds: l.ml.holds(),
            tail_constant: l.tail_constant,
            certified: l.certified,
        })
        .collect();
    let inferred: Vec<Option<usize>> = ses.rows.iter().map(|r| r.inferred).collect();
    let ok = inferred.iter().all(Option::is_some);
    Ok((status_of(ok), Body::Tower { family: tower.label.clone(), stages, transition_ranks, limits, inferred }))
}

/// `crown-incidence(2,3,0)` becomes `crown-incidence-2-3-0.json`.
pub fn file_name(label: &str) -> String {
    let stem: String = label.chars().map(|ch| if ch.is_ascii_alphanumeric() || ch == '-' { ch } else { '-' }).collect();
    format!("{}.json", stem.trim_end_matches('-'))
}

fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Error::InvalidInput(e.to_string()))?;
    text.push('\n');
    fs::write(path, text).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_names_and_fields() {
        assert_eq!(file_name("crown-incidence(2,3,0)"), "crown-incidence-2-3-0.json");
        assert_eq!(parse_field("F5").unwrap(), FieldSpec::prime(5).unwrap());
        assert_eq!(parse_field("Q").unwrap(), FieldSpec::Rationals);
        assert!(parse_field("F4").is_err());
        assert!(parse_field("R").is_err());
    }

    #[test]
    fn statuses() {
        assert_eq!(error_status(&Error::DimensionOverflow { degree: 1, dim: 9, budget: 3 }).exit_code(), 3);
        assert_eq!(error_status(&Error::NotACocycle { degree: 1 }).exit_code(), 1);
        assert_eq!(error_status(&Error::UnknownObject("x".into())).exit_code(), 2);
    }
}
