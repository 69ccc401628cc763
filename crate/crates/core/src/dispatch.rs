//! Routes classified equations to the matching decider and packs the answer
//! into a flat [`Record`].

use std::time::Instant;

use serde::Serialize;

use crate::cycles::CycleSet;
use crate::decide::{
    decide_multi_target, decide_scaled, decide_scaled_paper_strict, deep_decide, DecisionReport,
    Refutation,
};
use crate::error::{Error, Result};
use crate::feasible::{count_solutions, decide_sum_lhs, enumerate_solutions};
use crate::parse::{Classification, EquationAst};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Decide { paper_strict: bool },
    Enumerate { limit: Option<usize> },
    Count,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Decide { .. } => "decide",
            Command::Enumerate { .. } => "enumerate",
            Command::Count => "count",
        }
    }
}

/// One structured output record. Every field is always present (possibly
/// `null`) so that consumers see a fixed schema.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Record {
    pub command: &'static str,
    pub equation: Option<String>,
    pub classification: Option<&'static str>,
    pub verdict: Option<bool>,
    pub witness: Option<CycleSet>,
    pub refutation: Option<Refutation>,
    pub pi_f: Option<u64>,
    pub e: Option<u64>,
    pub count: Option<u64>,
    pub solutions: Option<Vec<CycleSet>>,
    pub value: Option<CycleSet>,
    pub paper_strict_verdict: Option<bool>,
    pub gcd_calls: Option<u64>,
    pub elapsed_ns: u64,
}

impl Record {
    pub fn new(command: &'static str) -> Self {
        Self {
            command,
            equation: None,
            classification: None,
            verdict: None,
            witness: None,
            refutation: None,
            pi_f: None,
            e: None,
            count: None,
            solutions: None,
            value: None,
            paper_strict_verdict: None,
            gcd_calls: None,
            elapsed_ns: 0,
        }
    }

    fn absorb(&mut self, report: DecisionReport) {
        self.verdict = Some(report.verdict);
        self.witness = report.witness().cloned();
        self.refutation = report.refutation().cloned();
        if let Some(i) = report.intermediates {
            self.pi_f = Some(i.pi_f);
            self.e = Some(i.e);
        }
        self.gcd_calls = report.gcd_calls;
    }
}

/// Runs `command` on a parsed equation.
pub fn dispatch(equation: &EquationAst, command: Command) -> Result<Record> {
    let start = Instant::now();
    let class = &equation.classification;
    if let Classification::Unsupported { reason } = class {
        return Err(Error::Unsupported(reason.clone()));
    }
    let mut record = Record::new(command.name());
    record.equation = Some(equation.to_string());
    record.classification = Some(class.name());
    match command {
        Command::Decide { paper_strict } => {
            let report = match class {
                Classification::Basic { p, q, n } => deep_decide(*p, *q, *n)?,
                Classification::Scaled { m, p, q, n } => decide_scaled(*m, *p, *q, *n)?,
                Classification::MultiTarget { m, p, targets } => {
                    decide_multi_target(*m, *p, targets)?
                }
                Classification::SumLhs { monomials, q, n } => decide_sum_lhs(monomials, *q, *n)?,
                Classification::Unsupported { .. } => unreachable!(),
            };
            if paper_strict {
                record.paper_strict_verdict = match *class {
                    Classification::Basic { p, q, n } => {
                        Some(decide_scaled_paper_strict(1, p, q, n)?)
                    }
                    Classification::Scaled { m, p, q, n } => {
                        Some(decide_scaled_paper_strict(m, p, q, n)?)
                    }
                    _ => None,
                };
            }
            record.absorb(report);
        }
        Command::Enumerate { limit } => {
            let eq = basic_only(class, "enumerate")?;
            let solutions: Vec<CycleSet> = enumerate_solutions(eq.p, eq.q, eq.n, limit)?.collect();
            record.count = Some(solutions.len() as u64);
            record.verdict = Some(!solutions.is_empty());
            record.solutions = Some(solutions);
        }
        Command::Count => {
            let eq = basic_only(class, "count")?;
            let count = count_solutions(eq.p, eq.q, eq.n)?;
            record.count = Some(count);
            record.verdict = Some(count > 0);
        }
    }
    record.elapsed_ns = start.elapsed().as_nanos() as u64;
    Ok(record)
}

fn basic_only(class: &Classification, command: &str) -> Result<crate::cycles::BasicEquation> {
    class.as_basic().ok_or_else(|| {
        Error::Unsupported(format!(
            "{command} supports Basic only (equation is {})",
            class.name()
        ))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_equation;

    fn run(text: &str, command: Command) -> Result<Record> {
        dispatch(&parse_equation(text).unwrap(), command)
    }

    #[test]
    fn decide_worked_instance() {
        let r = run(
            "C(1,8400)*X=C(6000,8316000)",
            Command::Decide {
                paper_strict: false,
            },
        )
        .unwrap();
        assert_eq!(r.verdict, Some(true));
        assert_eq!((r.pi_f, r.e), (Some(11), Some(1200)));
        assert!(r.gcd_calls.is_some());
    }

    #[test]
    fn count_golden() {
        assert_eq!(
            run("C(1,4)*X=C(12,12)", Command::Count).unwrap().count,
            Some(16)
        );
    }

    #[test]
    fn enumerate_rejects_non_basic() {
        let err = run("C(2,2)*X=C(4,4)", Command::Enumerate { limit: None }).unwrap_err();
        assert!(
            err.to_string().contains("enumerate supports Basic only"),
            "{err}"
        );
        assert!(run("C(2,2)*X=C(4,4)", Command::Count).is_err());
    }

    #[test]
    fn unsupported_is_an_error() {
        assert!(matches!(
            run(
                "X*Y=C(1,1)",
                Command::Decide {
                    paper_strict: false
                }
            ),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn paper_strict_flag() {
        let r = run("C(2,2)*X=C(4,4)", Command::Decide { paper_strict: true }).unwrap();
        assert_eq!(r.verdict, Some(true));
        assert_eq!(r.paper_strict_verdict, Some(false));
    }

    #[test]
    fn routes_variants() {
        let d = Command::Decide {
            paper_strict: false,
        };
        let r = run("(C(1,2)+C(1,3))*X = C(10,6)", d).unwrap();
        assert_eq!((r.classification, r.verdict), (Some("sum_lhs"), Some(true)));
        let r = run("C(1,3)*X = C(3,6)+C(5,12)", d).unwrap();
        assert_eq!(
            (r.classification, r.verdict),
            (Some("multi_target"), Some(true))
        );
    }

    #[test]
    fn record_has_fixed_fields() {
        let r = run(
            "C(1,2)*X=C(5,4)",
            Command::Decide {
                paper_strict: false,
            },
        )
        .unwrap();
        let json = serde_json::to_value(&r).unwrap();
        let keys: Vec<&str> = json
            .as_object()
            .unwrap()
            .keys()
            .map(String::as_str)
            .collect();
        for field in [
            "verdict",
            "witness",
            "count",
            "elapsed_ns",
            "gcd_calls",
            "refutation",
        ] {
            assert!(keys.contains(&field), "missing {field}");
        }
        assert_eq!(json["refutation"], "e = 2 does not divide n = 5");
        assert!(json["witness"].is_null());
    }
}
