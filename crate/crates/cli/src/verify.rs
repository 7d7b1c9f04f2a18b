//! Theorem and corollary verification.

use std::time::{SystemTime, UNIX_EPOCH};

use jmx_core::actions::{borel_model, jmx, tensor_product, FilteredMonoidFamily, MonoidKind};
use jmx_core::categories::{nerve, FinCat};
use jmx_core::homology::{homology_groups, reduce, stabilize, HomologyGroup, Stabilized};
use jmx_core::int::Int;
use jmx_core::simplicial::{reduced_chains, simplicial_circle, smash, SSetFT};
use jmx_core::Error;
use serde::Serialize;

use crate::registry::{self, Payload};

/// Failures that stop a verification before a report exists.
#[derive(Debug)]
pub enum CliError {
    UnknownInstance(String),
    WrongKind { key: String, wanted: &'static str },
    Core(Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::UnknownInstance(k) => write!(f, "unknown instance or corollary {k:?}"),
            CliError::WrongKind { key, wanted } => write!(f, "instance {key:?} is not {wanted}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    pub max_degree: usize,
    pub budget: usize,
    /// First length cutoff tried; `max_degree` (at least 1) when absent.
    pub k0: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Match,
    Mismatch,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Exact,
    Empirical,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupReport {
    pub degree: usize,
    pub group: String,
    pub betti: usize,
    pub torsion: Vec<Int>,
    pub cutoff: Option<usize>,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeVerdict {
    pub degree: usize,
    pub verdict: Verdict,
}

/// Reduced homology of both sides of a comparison, degree by degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub instance: String,
    pub check: String,
    pub max_degree: usize,
    pub budget: usize,
    pub lhs_space: String,
    pub rhs_space: String,
    pub lhs: Vec<GroupReport>,
    pub rhs: Vec<GroupReport>,
    pub verdicts: Vec<DegreeVerdict>,
    pub overall: Verdict,
    pub note: Option<String>,
    /// Length cutoffs tried on the right-hand side with the groups found.
    pub rhs_history: Vec<(usize, Vec<String>)>,
    pub timestamp: u64,
}

fn group_reports(groups: &[HomologyGroup], cutoff: Option<usize>, status: Status) -> Vec<GroupReport> {
    groups
        .iter()
        .enumerate()
        .map(|(degree, g)| GroupReport {
            degree,
            group: g.to_string(),
            betti: g.betti,
            torsion: g.torsion.clone(),
            cutoff,
            status,
        })
        .collect()
}

struct Sides {
    lhs_space: String,
    rhs_space: String,
    lhs: Vec<HomologyGroup>,
    rhs: Result<Stabilized, Error>,
}

fn assemble(key: &str, check: String, opts: &Options, sides: Sides) -> Result<VerificationReport, CliError> {
    let lhs = group_reports(&sides.lhs, None, Status::Exact);
    let (rhs, verdicts, note, history) = match sides.rhs {
        Ok(s) => {
            let reduced = reduce(&s.groups);
            let verdicts: Vec<DegreeVerdict> = (0..=opts.max_degree)
                .map(|degree| DegreeVerdict {
                    degree,
                    verdict: if sides.lhs[degree] == reduced[degree] { Verdict::Match } else { Verdict::Mismatch },
                })
                .collect();
            let history = s
                .history
                .iter()
                .map(|(k, g)| (*k, reduce(g).iter().map(ToString::to_string).collect()))
                .collect();
            (group_reports(&reduced, Some(s.cutoff), Status::Empirical), verdicts, None, history)
        }
        Err(e @ Error::CutoffOverflow { .. }) => {
            let verdicts =
                (0..=opts.max_degree).map(|degree| DegreeVerdict { degree, verdict: Verdict::Inconclusive }).collect();
            (Vec::new(), verdicts, Some(e.to_string()), Vec::new())
        }
        Err(e) => return Err(e.into()),
    };
    let overall = if verdicts.iter().any(|v| v.verdict == Verdict::Mismatch) {
        Verdict::Mismatch
    } else if verdicts.iter().any(|v| v.verdict == Verdict::Inconclusive) {
        Verdict::Inconclusive
    } else {
        Verdict::Match
    };
    Ok(VerificationReport {
        instance: key.to_string(),
        check,
        max_degree: opts.max_degree,
        budget: opts.budget,
        lhs_space: sides.lhs_space,
        rhs_space: sides.rhs_space,
        lhs,
        rhs,
        verdicts,
        overall,
        note,
        rhs_history: history,
        timestamp: SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
    })
}

fn stabilized(f: &FilteredMonoidFamily, opts: &Options) -> Result<Stabilized, Error> {
    stabilize(f, opts.max_degree, opts.k0.unwrap_or(opts.max_degree.max(1)), opts.budget)
}

/// Compares the cofiber of `X -> X ⋊_M EM` with `BJ^M[X]`.
///
/// Refuses with [`Error::HypothesisFails`] when some level has a pair
/// `(x, m)` without an invertible `k` such that `x·m = x·k`.
pub fn verify_theorem(key: &str, opts: &Options) -> Result<VerificationReport, CliError> {
    let inst = registry::find(key).ok_or_else(|| CliError::UnknownInstance(key.into()))?;
    let Payload::Action(build) = inst.payload else {
        return Err(CliError::WrongKind { key: key.into(), wanted: "an action" });
    };
    let d = opts.max_degree;
    let a = build(d + 1)?;
    a.check_hypothesis()?;
    for n in 0..=a.top() {
        a.level(n).hypothesis_equiv_check()?;
    }
    let lhs_chains = borel_model(&a, d + 1)?.cofiber_chains(d)?;
    let lhs = homology_groups(&lhs_chains);
    let rhs = jmx(&a).and_then(|f| stabilized(&f, opts));
    let sides = Sides {
        lhs_space: "diag N(X//M) / (X u N(pt//M))".into(),
        rhs_space: "B J^M[X], length filtration".into(),
        lhs,
        rhs,
    };
    assemble(key, "theorem".into(), opts, sides)
}

fn classifying_model(kind: &MonoidKind, top: usize) -> Result<SSetFT, Error> {
    match kind {
        MonoidKind::Finite(m) => Ok(nerve(&FinCat::from_monoid(m), top)),
        MonoidKind::N | MonoidKind::Z => simplicial_circle(top),
    }
}

/// Compares `|X| ∧ BM` with `B(X ⊗ M)` for a named corollary.
pub fn verify_corollary(name: &str, opts: &Options) -> Result<VerificationReport, CliError> {
    let key = registry::COROLLARIES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, k)| *k)
        .ok_or_else(|| CliError::UnknownInstance(name.into()))?;
    let inst = registry::find(key).ok_or_else(|| CliError::UnknownInstance(key.into()))?;
    let Payload::Tensor { space, monoid } = inst.payload else {
        return Err(CliError::WrongKind { key: key.into(), wanted: "a tensor product" });
    };
    let d = opts.max_degree;
    let x = space(d + 1)?;
    let closed = smash(&x, &classifying_model(&monoid, d + 1)?)?;
    let lhs = homology_groups(&reduced_chains(&closed, d)?);
    let rhs = tensor_product(&x, &monoid, d + 1).and_then(|f| stabilized(&f, opts));
    let sides = Sides { lhs_space: "|X| ^ BM".into(), rhs_space: "B(X (x) M), length filtration".into(), lhs, rhs };
    assemble(key, format!("corollary:{name}"), opts, sides)
}

impl VerificationReport {
    /// Same report with the timestamp cleared, for byte-level comparison.
    pub fn without_timestamp(&self) -> VerificationReport {
        VerificationReport { timestamp: 0, ..self.clone() }
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("instance\tcheck\tside\tdegree\tgroup\tbetti\ttorsion\tcutoff\tstatus\tverdict\n");
        for (side, rows) in [("lhs", &self.lhs), ("rhs", &self.rhs)] {
            for r in rows.iter() {
                let verdict = self.verdicts.iter().find(|v| v.degree == r.degree).map(|v| v.verdict);
                out.push_str(&format!(
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                    self.instance,
                    self.check,
                    side,
                    r.degree,
                    r.group,
                    r.betti,
                    r.torsion.iter().map(ToString::to_string).collect::<Vec<_>>().join(","),
                    r.cutoff.map_or("-".into(), |c| c.to_string()),
                    serde_json::to_value(r.status).expect("plain enum").as_str().unwrap_or_default(),
                    verdict
                        .map(|v| serde_json::to_value(v).expect("plain enum").as_str().unwrap_or_default().to_string())
                        .unwrap_or_default(),
                ));
            }
        }
        out
    }
}
