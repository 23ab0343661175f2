//! Report objects, their JSON form and an aligned text rendering.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    CheckFailed,
    InputError,
    BudgetExceeded,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::CheckFailed => 1,
            Status::InputError => 2,
            Status::BudgetExceeded => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowMeta {
    pub stages: usize,
    pub window: usize,
    pub trailing: usize,
}

/// The regime a number was computed in.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Regime {
    pub field: Option<String>,
    pub complex: Option<String>,
    pub max_degree: Option<usize>,
    pub budget: Option<usize>,
    pub window: Option<WindowMeta>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessJson {
    pub object: String,
    pub degree: String,
    pub target: String,
    pub left: String,
    pub achieved: usize,
    pub required: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairJson {
    pub source: String,
    pub target: String,
    pub tensor_dim: usize,
    pub beta_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Row {
    pub degree: usize,
    pub columns: Vec<usize>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhiJson {
    pub element: String,
    pub domain_dim: usize,
    pub codomain_dim: usize,
    pub rank: usize,
    pub bijective: bool,
    pub linear: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShapiroJson {
    pub element: String,
    pub coinduced: Vec<usize>,
    pub restricted: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StageJson {
    pub stage: usize,
    pub objects: usize,
    pub dims: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LimitJson {
    pub degree: usize,
    pub lim: usize,
    pub lim1: usize,
    pub stable_dims: Vec<usize>,
    pub stable_from: Vec<Option<usize>>,
    pub ml_holds: bool,
    pub tail_constant: bool,
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Body {
    Validation { checks: Vec<Check> },
    Dims { degrees: Vec<usize>, dims: Vec<usize> },
    Center { center_dim: usize, hh0: usize },
    Smash {
        group_order: usize,
        objects: usize,
        total_dim: usize,
        degree_dims: Vec<(String, usize)>,
        coinvariants_match: bool,
        strongly_graded: bool,
        written: Option<String>,
    },
    Galois {
        strongly_graded: bool,
        witness: Option<WitnessJson>,
        pivot: String,
        pairs: Vec<PairJson>,
        rl_terms: usize,
        properties: Vec<bool>,
        failures: Vec<String>,
    },
    Decompose {
        columns: Vec<String>,
        rows: Vec<Row>,
        phi: Vec<PhiJson>,
        shapiro: Vec<ShapiroJson>,
    },
    E2 { dims: Vec<Vec<usize>>, totals: Vec<usize> },
    Collapse { mode: String, columns: Vec<String>, rows: Vec<Row> },
    Tower {
        family: String,
        stages: Vec<StageJson>,
        transition_ranks: Vec<Vec<usize>>,
        limits: Vec<LimitJson>,
        inferred: Vec<Option<usize>>,
    },
    Gen { written: Vec<String> },
    Error { error: String, message: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub verb: String,
    pub status: Status,
    pub inputs: Vec<String>,
    pub regime: Regime,
    pub body: Body,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let status = serde_json::to_value(self.status).expect("status serializes");
        let mut head = vec![
            vec!["verb".to_string(), self.verb.clone()],
            vec!["status".to_string(), status.as_str().unwrap_or_default().to_string()],
        ];
        if !self.inputs.is_empty() {
            head.push(vec!["inputs".into(), self.inputs.join(", ")]);
        }
        let r = &self.regime;
        let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
        head.push(vec!["field".into(), opt(r.field.clone())]);
        head.push(vec!["complex".into(), opt(r.complex.clone())]);
        head.push(vec!["max degree".into(), opt(r.max_degree.map(|d| d.to_string()))]);
        if let Some(b) = r.budget {
            head.push(vec!["budget".into(), b.to_string()]);
        }
        if let Some(w) = &r.window {
            head.push(vec!["window".into(), format!("{} of {} stages, {} trailing", w.window, w.stages, w.trailing)]);
        }
        render(&mut out, &[], &head);
        out.push('\n');
        self.body_table(&mut out);
        out
    }

    fn body_table(&self, out: &mut String) {
        let yes = |b: bool| if b { "yes".to_string() } else { "no".to_string() };
        let nums = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
        match &self.body {
            Body::Validation { checks } => {
                let rows: Vec<Vec<String>> = checks.iter().map(|c| vec![c.name.clone(), yes(c.passed), c.failures.join("; ")]).collect();
                render(out, &["check", "passed", "failures"], &rows);
            }
            Body::Dims { degrees, dims } => {
                let rows: Vec<Vec<String>> = degrees.iter().zip(dims).map(|(d, v)| vec![d.to_string(), v.to_string()]).collect();
                render(out, &["degree", "dim"], &rows);
            }
            Body::Center { center_dim, hh0 } => {
                render(out, &["center dim", "HH^0 dim"], &[vec![center_dim.to_string(), hh0.to_string()]]);
            }
            Body::Smash { group_order, objects, total_dim, degree_dims, coinvariants_match, strongly_graded, written } => {
                let rows = vec![
                    vec!["group order".into(), group_order.to_string()],
                    vec!["objects".into(), objects.to_string()],
                    vec!["total hom dim".into(), total_dim.to_string()],
                    vec!["coinvariants match".into(), yes(*coinvariants_match)],
                    vec!["strongly graded".into(), yes(*strongly_graded)],
                    vec!["written".into(), written.clone().unwrap_or_else(|| "-".into())],
                ];
                render(out, &[], &rows);
                out.push('\n');
                let per: Vec<Vec<String>> = degree_dims.iter().map(|(g, d)| vec![g.clone(), d.to_string()]).collect();
                render(out, &["degree", "dim"], &per);
            }
            Body::Galois { strongly_graded, witness, pivot, pairs, rl_terms, properties, failures } => {
                let mut rows = vec![vec!["strongly graded".into(), yes(*strongly_graded)], vec!["pivot order".into(), pivot.clone()]];
                if let Some(w) = witness {
                    rows.push(vec![
                        "witness".into(),
                        format!("object {} degree {}: {} of {} at {}", w.object, w.degree, w.achieved, w.required, w.target),
                    ]);
                }
                if !pairs.is_empty() {
                    rows.push(vec!["r/l terms".into(), rl_terms.to_string()]);
                    let props: Vec<String> = properties.iter().enumerate().map(|(i, p)| format!("{}:{}", i + 1, yes(*p))).collect();
                    rows.push(vec!["properties".into(), props.join(" ")]);
                }
                for f in failures {
                    rows.push(vec!["failure".into(), f.clone()]);
                }
                render(out, &[], &rows);
                if !pairs.is_empty() {
                    out.push('\n');
                    let per: Vec<Vec<String>> = pairs
                        .iter()
                        .map(|p| vec![p.source.clone(), p.target.clone(), p.tensor_dim.to_string(), p.beta_rank.to_string()])
                        .collect();
                    render(out, &["source", "target", "tensor dim", "beta rank"], &per);
                }
            }
            Body::Decompose { columns, rows, phi, shapiro } => {
                let mut head: Vec<&str> = vec!["degree"];
                head.extend(columns.iter().map(String::as_str));
                head.push("agree");
                render(out, &head, &comparison_rows(rows));
                out.push('\n');
                let per: Vec<Vec<String>> = phi
                    .iter()
                    .map(|p| {
                        vec![p.element.clone(), p.domain_dim.to_string(), p.codomain_dim.to_string(), p.rank.to_string(), yes(p.bijective), yes(p.linear)]
                    })
                    .collect();
                render(out, &["g", "H0 M_[g]", "coinduced", "rank", "bijective", "kG-linear"], &per);
                out.push('\n');
                let sh: Vec<Vec<String>> =
                    shapiro.iter().map(|s| vec![s.element.clone(), nums(&s.coinduced), nums(&s.restricted)]).collect();
                render(out, &["g", "H^p(G, coinduced)", "H^p(Z(g), V)"], &sh);
            }
            Body::E2 { dims, totals } => {
                let qmax = dims.first().map_or(0, Vec::len);
                let mut head = vec!["p \\ q".to_string()];
                head.extend((0..qmax).map(|q| q.to_string()));
                let rows: Vec<Vec<String>> = dims
                    .iter()
                    .enumerate()
                    .map(|(p, row)| std::iter::once(p.to_string()).chain(row.iter().map(usize::to_string)).collect())
                    .collect();
                let head_refs: Vec<&str> = head.iter().map(String::as_str).collect();
                render(out, &head_refs, &rows);
                out.push('\n');
                let t: Vec<Vec<String>> = totals.iter().enumerate().map(|(n, v)| vec![n.to_string(), v.to_string()]).collect();
                render(out, &["total degree", "sum"], &t);
            }
            Body::Collapse { mode, columns, rows } => {
                let _ = writeln!(out, "mode  {mode}\n");
                let mut head: Vec<&str> = vec!["degree"];
                head.extend(columns.iter().map(String::as_str));
                head.push("holds");
                render(out, &head, &comparison_rows(rows));
            }
            Body::Tower { family, stages, transition_ranks, limits, inferred } => {
                let _ = writeln!(out, "family  {family}\n");
                let per: Vec<Vec<String>> = stages
                    .iter()
                    .enumerate()
                    .map(|(i, s)| {
                        let ranks = i.checked_sub(1).and_then(|k| transition_ranks.get(k)).map_or("-".to_string(), |r| nums(r));
                        vec![s.stage.to_string(), s.objects.to_string(), nums(&s.dims), ranks]
                    })
                    .collect();
                render(out, &["stage", "objects", "HH dims", "ranks to previous"], &per);
                out.push('\n');
                let lim: Vec<Vec<String>> = limits
                    .iter()
                    .zip(inferred)
                    .map(|(l, inf)| {
                        vec![
                            l.degree.to_string(),
                            l.lim.to_string(),
                            l.lim1.to_string(),
                            yes(l.ml_holds),
                            yes(l.tail_constant),
                            yes(l.certified),
                            inf.map_or("uncertified".to_string(), |v| v.to_string()),
                        ]
                    })
                    .collect();
                render(out, &["degree", "lim", "lim1", "M-L", "tail constant", "certified", "inferred HH"], &lim);
            }
            Body::Gen { written } => {
                let rows: Vec<Vec<String>> = written.iter().map(|w| vec![w.clone()]).collect();
                render(out, &["written"], &rows);
            }
            Body::Error { error, message } => {
                render(out, &[], &[vec!["error".into(), error.clone()], vec!["message".into(), message.clone()]]);
            }
        }
    }
}

fn comparison_rows(rows: &[Row]) -> Vec<Vec<String>> {
    rows.iter()
        .map(|r| {
            std::iter::once(r.degree.to_string())
                .chain(r.columns.iter().map(usize::to_string))
                .chain(std::iter::once(if r.holds { "yes".into() } else { "no".into() }))
                .collect()
        })
        .collect()
}

/// Left-aligned columns separated by two spaces.
fn render(out: &mut String, head: &[&str], rows: &[Vec<String>]) {
    let cols = rows.iter().map(Vec::len).chain(std::iter::once(head.len())).max().unwrap_or(0);
    let mut width = vec![0; cols];
    for (i, h) in head.iter().enumerate() {
        width[i] = h.chars().count();
    }
    for r in rows {
        for (i, c) in r.iter().enumerate() {
            width[i] = width[i].max(c.chars().count());
        }
    }
    let line = |out: &mut String, cells: &mut dyn Iterator<Item = &str>| {
        let mut s = String::new();
        for (i, c) in cells.enumerate() {
            if i > 0 {
                s.push_str("  ");
            }
            let _ = write!(s, "{c:<w$}", w = width[i]);
        }
        out.push_str(s.trim_end());
        out.push('\n');
    };
    if !head.is_empty() {
        line(out, &mut head.iter().copied());
    }
    for r in rows {
        line(out, &mut r.iter().map(String::as_str));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let r = Report {
            verb: "tower".into(),
            status: Status::Ok,
            inputs: vec!["tree-tower(2,1)".into()],
            regime: Regime { field: Some("Q".into()), window: Some(WindowMeta { stages: 6, window: 6, trailing: 3 }), ..Default::default() },
            body: Body::Tower {
                family: "tree-tower(2,1)".into(),
                stages: vec![StageJson { stage: 1, objects: 2, dims: vec![1, 0] }],
                transition_ranks: vec![],
                limits: vec![LimitJson {
                    degree: 0,
                    lim: 1,
                    lim1: 0,
                    stable_dims: vec![1],
                    stable_from: vec![Some(1), None],
                    ml_holds: true,
                    tail_constant: true,
                    certified: true,
                }],
                inferred: vec![Some(1), None],
            },
        };
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(r.to_table().contains("inferred HH"));
    }

    #[test]
    fn table_alignment() {
        let mut out = String::new();
        render(&mut out, &["a", "bbb"], &[vec!["xx".into(), "y".into()]]);
        assert_eq!(out, "a   bbb\nxx  y\n");
    }
}
