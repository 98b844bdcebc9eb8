//! Subcommand implementations. Each returns the result value and a status;
//! `run` wraps it into a report.

use std::path::Path;
use std::time::Instant;

use clap::ValueEnum;
use concover::covers::{gamma_bounds, validate_cover, Cover, SearchOutcome};
use concover::fixtures::{run_fixture, Fixture};
use concover::gen;
use concover::graph::{has_minor, Graph};
use concover::helly::{
    experiment_record, helly_number, minor_from_helly_configuration, piercing_number, pq_property,
};
use concover::simplicial::{betti, tchain, tchain_crossing, Chain};
use concover::{Error, Result};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::input;
use crate::report::{sha256_hex, Failure, RunReport, Status};
use crate::{Cli, Command, GlobalFlags};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepFamily {
    /// Planar graphs on 5 to 12 vertices.
    Planar,
    /// K4-minor-free graphs on 5 to 12 vertices.
    K4Free,
}

struct Outcome {
    result: Value,
    status: Status,
    exit: u8,
}

impl Outcome {
    fn ok(result: impl Serialize) -> Result<Outcome> {
        Ok(Outcome {
            result: to_value(result)?,
            status: Status::Ok,
            exit: 0,
        })
    }

    fn failed(result: impl Serialize, exit: u8) -> Result<Outcome> {
        Ok(Outcome {
            result: to_value(result)?,
            status: Status::Failed,
            exit,
        })
    }
}

fn to_value(v: impl Serialize) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::Internal(format!("serializing the result: {e}")))
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Gamma { .. } => "gamma",
        Command::Nerve { .. } => "nerve",
        Command::Betti { .. } => "betti",
        Command::Validate { .. } => "validate",
        Command::Minor { .. } => "minor",
        Command::Helly { .. } => "helly",
        Command::Pierce { .. } => "pierce",
        Command::Pq { .. } => "pq",
        Command::Tchain { .. } => "tchain",
        Command::Search { .. } => "search",
        Command::Reproduce { .. } => "reproduce",
        Command::Sweep { .. } => "sweep",
    }
}

pub fn run(cli: &Cli) -> RunReport {
    let mut inputs = Map::new();
    let start = Instant::now();
    let outcome = dispatch(&cli.command, &cli.flags, &mut inputs);
    let elapsed = start.elapsed();
    let (result, status, error, exit_code) = match outcome {
        Ok(o) => (o.result, o.status, None, o.exit),
        Err(e) => (
            Value::Null,
            Status::Error,
            Some(e.to_string()),
            Failure::code(&e),
        ),
    };
    RunReport {
        command: command_name(&cli.command).to_string(),
        inputs,
        result,
        status,
        error,
        budget: cli.flags.budget(),
        timing_ms: cli.flags.timing.then_some(elapsed.as_millis() as u64),
        exit_code,
    }
}

fn load_graph(arg: &str, key: &str, inputs: &mut Map<String, Value>) -> Result<Graph> {
    let g = input::graph(arg)?;
    inputs.insert(
        format!("{key}_sha256"),
        json!(sha256_hex(&input::graph_text(&g))),
    );
    inputs.insert(format!("{key}_order"), json!(g.order()));
    Ok(g)
}

fn load_cover(path: &Path, inputs: &mut Map<String, Value>) -> Result<Cover> {
    let c = input::cover(path)?;
    inputs.insert(
        "cover_sha256".into(),
        json!(sha256_hex(&input::cover_text(&c))),
    );
    inputs.insert("members".into(), json!(c.len()));
    Ok(c)
}

fn dispatch(
    command: &Command,
    flags: &GlobalFlags,
    inputs: &mut Map<String, Value>,
) -> Result<Outcome> {
    let caps = flags.caps();
    match command {
        Command::Gamma { graph } => {
            let g = load_graph(graph, "graph", inputs)?;
            let budget = flags.search_budget();
            let b = gamma_bounds(&g, &caps, flags.exhaustive.then_some(&budget))?;
            let status = if b.budget_exhausted {
                Status::UnknownBudgetExhausted
            } else {
                Status::Ok
            };
            Ok(Outcome {
                result: to_value(&b)?,
                status,
                exit: 0,
            })
        }
        Command::Nerve { cover } => {
            let c = load_cover(cover, inputs)?;
            let k = c.nerve()?;
            Outcome::ok(json!({
                "maximal_faces": k,
                "f_vector": k.f_vector(),
                "dimension": k.dim(),
            }))
        }
        Command::Betti { cover, complex } => {
            let (k, valid) = match (cover, complex) {
                (_, Some(path)) => {
                    let k = input::complex(path)?;
                    inputs.insert("complex_sha256".into(), json!(sha256_hex(&k.to_text())));
                    (k, None)
                }
                (Some(path), None) => {
                    let c = load_cover(path, inputs)?;
                    (c.nerve()?, Some(c.is_valid()))
                }
                (None, None) => return Err(Error::Input("give a cover or --complex".into())),
            };
            let mut result = json!({ "betti": betti(&k).values });
            if let Some(v) = valid {
                result["connected_cover"] = json!(v);
            }
            Outcome::ok(result)
        }
        Command::Validate { cover } => {
            let c = load_cover(cover, inputs)?;
            let r = validate_cover(&c);
            if r.valid {
                Outcome::ok(r)
            } else {
                Outcome::failed(r, Failure::INPUT)
            }
        }
        Command::Minor { graph, pattern } => {
            let g = load_graph(graph, "graph", inputs)?;
            let h = load_graph(pattern, "pattern", inputs)?;
            match has_minor(&g, &h, &caps)? {
                Some(cert) => Outcome::ok(json!({ "minor": cert })),
                None => Outcome::ok(json!({ "minor": "none" })),
            }
        }
        Command::Helly { cover } => {
            let c = load_cover(cover, inputs)?;
            let h = helly_number(&c, &caps)?;
            let certificate = match &h.configuration {
                Some(hc) if hc.members.len() >= 3 && c.is_valid() => {
                    Some(minor_from_helly_configuration(&c, hc)?)
                }
                _ => None,
            };
            Outcome::ok(json!({
                "helly": h.number,
                "configuration": h.configuration,
                "clique_minor": certificate,
            }))
        }
        Command::Pierce { cover } => {
            let c = load_cover(cover, inputs)?;
            Outcome::ok(piercing_number(&c, &caps)?)
        }
        Command::Pq { cover, p, q } => {
            let c = load_cover(cover, inputs)?;
            inputs.insert("p".into(), json!(p));
            inputs.insert("q".into(), json!(q));
            Outcome::ok(json!({ "holds": pq_property(&c, *p, *q, &caps)? }))
        }
        Command::Tchain { cycle, order } => {
            let listed = input::triangles(cycle)?;
            inputs.insert(
                "cycle_sha256".into(),
                json!(sha256_hex(&input::triangles_text(&listed))),
            );
            let order = match order {
                Some(path) => {
                    let o = input::triangles(path)?;
                    inputs.insert(
                        "order_sha256".into(),
                        json!(sha256_hex(&input::triangles_text(&o))),
                    );
                    o
                }
                None => listed.clone(),
            };
            let tau = Chain::from_simplices(listed.iter().copied())?;
            if tau.len() != listed.len() {
                return Err(Error::Input("a triangle is listed twice".into()));
            }
            let t = tchain(&tau, &order)?;
            let crossing = tchain_crossing(&tau, &order)?;
            let boundary = t.boundary();
            let result = json!({
                "tetrahedra": t.simplices().collect::<Vec<_>>(),
                "boundary": boundary.simplices().collect::<Vec<_>>(),
                "boundary_is_cycle": boundary == tau,
                "crossing_form_agrees": crossing == t,
            });
            if boundary == tau && crossing == t {
                Outcome::ok(result)
            } else {
                Outcome::failed(result, Failure::INTERNAL)
            }
        }
        Command::Search { graph, dim } => {
            let g = load_graph(graph, "graph", inputs)?;
            inputs.insert("dim".into(), json!(dim));
            let outcome =
                concover::covers::search_cover_with_homology(&g, *dim, &flags.search_budget())?;
            let status = if outcome == SearchOutcome::BudgetExhausted {
                Status::UnknownBudgetExhausted
            } else {
                Status::Ok
            };
            Ok(Outcome {
                result: to_value(&outcome)?,
                status,
                exit: 0,
            })
        }
        Command::Reproduce { name } => {
            let fixture: Fixture = name.parse()?;
            let seed = flags.seed.unwrap_or(0);
            inputs.insert("fixture".into(), json!(fixture));
            inputs.insert("seed".into(), json!(seed));
            let r = run_fixture(fixture, seed, &caps)?;
            if r.passed() {
                Outcome::ok(r)
            } else {
                Outcome::failed(r, Failure::INTERNAL)
            }
        }
        Command::Sweep { family, count } => {
            let seed = flags
                .seed
                .ok_or_else(|| Error::Input("sweep needs --seed".into()))?;
            inputs.insert("family".into(), json!(family));
            inputs.insert("count".into(), json!(count));
            inputs.insert("seed".into(), json!(seed));
            let mut rng = gen::rng(seed);
            let covers: Vec<Cover> = (0..*count)
                .map(|_| {
                    let n = rng.gen_range(5..=12);
                    let g = match family {
                        SweepFamily::Planar => gen::random_planar_graph(n, &mut rng),
                        SweepFamily::K4Free => gen::random_k4_minor_free(n, &mut rng),
                    };
                    let m = rng.gen_range(4..=12);
                    gen::random_connected_cover(&g, m, &mut rng)
                })
                .collect();
            let records = covers
                .par_iter()
                .enumerate()
                .map(|(i, c)| experiment_record(&format!("{seed}/{i}"), c, &caps))
                .collect::<Result<Vec<_>>>()?;
            Outcome::ok(records)
        }
    }
}
