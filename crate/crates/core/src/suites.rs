//! Named verification suites over a fixed battery of instances.

use crate::action::verify::{verify_action, VerifyConfig};
use crate::cosimplicial::{
    build_cocyclic, build_cosimplicial, cyclic_relation_suite, relation_suite,
};
use crate::operad::axioms::{
    check_cyclic, check_cyclic_multiplication, check_multiplication, check_operad, check_symmetric,
    Budget, FreeSampler, SuiteReport,
};
use crate::operad::{Ass, Correspondence, FiniteMonoid, Fms, FreeOperad, MonoidOperad};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Operad,
    Symmetric,
    Multiplication,
    Cyclic,
    Cosimplicial,
    Action,
}

fn tag(mut r: SuiteReport, instance: &str) -> SuiteReport {
    r.suite = format!("{} [{instance}]", r.suite);
    r
}

fn free(cyclic: bool) -> FreeSampler {
    FreeSampler {
        cyclic,
        evaluations: true,
        depth: 2,
    }
}

/// Runs one suite; reports come back in a fixed order.
pub fn run_suite(suite: Suite, seed: u64, samples: usize) -> Vec<SuiteReport> {
    let budget = Budget {
        seed,
        samples,
        ..Budget::default()
    };
    let small = Budget {
        max_arity: 3,
        ..budget
    };
    let z3 = MonoidOperad::new(FiniteMonoid::cyclic_group(3));
    let s3 = MonoidOperad::cyclic(FiniteMonoid::symmetric_group(3)).expect("S₃ is a group");
    let lx = Correspondence::new(3).expect("nonempty set");
    match suite {
        Suite::Operad => vec![
            tag(
                check_operad(
                    &Fms,
                    &Fms,
                    &Budget {
                        max_arity: 5,
                        ..budget
                    },
                ),
                "fMS",
            ),
            tag(check_operad(&Ass, &Ass, &budget), "Ass"),
            tag(check_operad(&z3, &z3, &budget), "Z/3"),
            tag(
                check_operad(
                    &lx,
                    &lx,
                    &Budget {
                        max_arity: 2,
                        ..budget
                    },
                ),
                "lX, |X| = 3",
            ),
            tag(check_operad(&FreeOperad, &free(true), &small), "free"),
        ],
        Suite::Symmetric => vec![
            tag(
                check_symmetric(
                    &Fms,
                    &Fms,
                    &Budget {
                        max_arity: 5,
                        ..budget
                    },
                ),
                "fMS",
            ),
            tag(check_symmetric(&Ass, &Ass, &budget), "Ass"),
            tag(check_symmetric(&z3, &z3, &budget), "Z/3"),
        ],
        Suite::Multiplication => vec![
            tag(check_multiplication(&Ass, &budget), "Ass"),
            tag(check_multiplication(&z3, &budget), "Z/3"),
            tag(check_multiplication(&lx, &budget), "lX, |X| = 3"),
            tag(check_multiplication(&FreeOperad, &budget), "free"),
        ],
        Suite::Cyclic => vec![
            tag(check_cyclic(&s3, &s3, &small), "S3"),
            tag(
                check_cyclic(
                    &lx,
                    &lx,
                    &Budget {
                        max_arity: 2,
                        ..budget
                    },
                ),
                "lX, |X| = 3",
            ),
            tag(check_cyclic(&FreeOperad, &free(true), &small), "free"),
            tag(check_cyclic_multiplication(&s3), "S3"),
            tag(check_cyclic_multiplication(&FreeOperad), "free"),
        ],
        Suite::Cosimplicial => {
            let z3c = build_cosimplicial(&z3).expect("monoid operads have a multiplication");
            let s3c = build_cocyclic(&s3).expect("group operads are cocyclic");
            let fc = build_cocyclic(&FreeOperad).expect("the free operad is cocyclic");
            vec![
                tag(relation_suite(&z3c, &z3, &budget), "Z/3"),
                tag(relation_suite(&s3c, &s3, &small), "S3"),
                tag(cyclic_relation_suite(&s3c, &s3, &small), "S3"),
                tag(relation_suite(&fc, &free(true), &small), "free"),
                tag(cyclic_relation_suite(&fc, &free(true), &small), "free"),
            ]
        }
        Suite::Action => {
            let mut out = Vec::new();
            for cyclic in [false, true] {
                let cfg = VerifyConfig {
                    cyclic,
                    samples,
                    seed,
                    ..VerifyConfig::default()
                };
                let mode = if cyclic { "cyclic" } else { "plain" };
                out.extend(verify_action(&cfg).into_iter().map(|r| tag(r, mode)));
            }
            out
        }
    }
}
