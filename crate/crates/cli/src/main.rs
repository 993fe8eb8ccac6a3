//! Batch command-line front end: every verification and computation is a
//! subcommand with JSON output and stable exit codes (0 = all checks pass,
//! 1 = a check failed, 2 = usage error).

use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use figvi::cat::Category;
use figvi::coind::{coind_free, coind_hom, key_identity_sweep, phi_iso, pi_map, theta};
use figvi::group::GroupSpec;
use figvi::homology::{charp_counterexample, ext1, injective_test, kappa, torsion_pair};
use figvi::module::{atom, direct_sum, free_module, TruncatedModule};
use figvi::partition::{hbar_check, pieri_set, Partition};
use figvi::report::{Check, Report};
use figvi::scalar::FieldSpec;
use figvi::selftest;
use figvi::wreath::{rs3_check, stability_report, WreathContext};
use figvi::{Error, Result};

#[derive(Parser)]
#[command(
    name = "figvi",
    about = "Exact calculus for the categories FI_G and VI at finite truncation",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for the deterministic witness searches; echoed in the output.
    #[arg(long, global = true, default_value_t = selftest::DEFAULT_SEED)]
    seed: u64,
    /// Also write the JSON document to this file.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    /// Human-readable lines instead of JSON.
    #[arg(long, global = true)]
    text: bool,
    /// Include witness matrices in reports.
    #[arg(long, global = true)]
    witnesses: bool,
}

#[derive(Args, Clone)]
struct CatOpts {
    /// Category: fi, fig, or vi.
    #[arg(long, default_value = "fi")]
    category: String,
    /// Group spec for fig (e.g. z2, z3xz2).
    #[arg(long)]
    group: Option<String>,
    /// Prime for vi.
    #[arg(long)]
    p: Option<u64>,
    /// Coefficient field: q (rationals) or f<p>.
    #[arg(long, default_value = "q")]
    field: String,
}

impl CatOpts {
    fn category(&self) -> Result<Category> {
        match self.category.as_str() {
            "fi" => Ok(Category::fi()),
            "fig" => {
                let g = self
                    .group
                    .as_deref()
                    .ok_or_else(|| Error::InvalidArgument("fig requires --group".into()))?;
                Ok(Category::Fig(GroupSpec::parse(g)?))
            }
            "vi" => {
                let p = self
                    .p
                    .ok_or_else(|| Error::InvalidArgument("vi requires --p".into()))?;
                if p >= 1 << 20 {
                    return Err(Error::InvalidArgument(format!("prime {p} too large")));
                }
                if !figvi::scalar::is_prime(p) {
                    return Err(Error::InvalidArgument(format!("{p} is not prime")));
                }
                Ok(Category::Vi(p))
            }
            other => Err(Error::InvalidArgument(format!(
                "unknown category '{other}'"
            ))),
        }
    }

    fn field(&self) -> Result<FieldSpec> {
        FieldSpec::parse(&self.field)
    }

    fn config_json(&self) -> serde_json::Value {
        serde_json::json!({
            "category": self.category,
            "group": self.group,
            "p": self.p,
            "field": self.field,
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate and count the morphisms m -> n.
    Morphisms {
        #[command(flatten)]
        cat: CatOpts,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// List the morphisms in canonical order.
        #[arg(long)]
        list: bool,
    },
    /// Dimensions of the free module kCe_m at a truncation.
    FreeDims {
        #[command(flatten)]
        cat: CatOpts,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        trunc: usize,
    },
    /// Verify the structural isomorphism Phi_n of shift(kCe_n).
    ShiftIso {
        #[command(flatten)]
        cat: CatOpts,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        trunc: usize,
    },
    /// Build the coinduction Q(kCe_m) and report its dimensions.
    Coind {
        #[command(flatten)]
        cat: CatOpts,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        trunc: usize,
        /// Also compute Q from the Hom definition and compare dimensions.
        #[arg(long)]
        compare_hom: bool,
    },
    /// Verify Q(kCe_m) = kCe_m (+) kCe_{m+1} for FI_G.
    VerifyFig {
        #[arg(long, default_value = "trivial")]
        group: String,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        trunc: usize,
    },
    /// Verify the surjection Q(kCe_m) -> kCe_{m+1} for VI.
    VerifyVi {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        trunc: usize,
        /// Number of random tuples for the key matrix identity.
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Check dim Hom(S V, W) = dim Hom(V, Q W) over the FI corpus.
    Adjunction {
        #[arg(long, default_value_t = 4)]
        trunc: usize,
    },
    /// Ext^1 between corpus modules (specs like "free:1", "atom:0+free:2").
    Ext1 {
        #[command(flatten)]
        cat: CatOpts,
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
        #[arg(long)]
        trunc: usize,
    },
    /// Injectivity of a module against every simple at degrees <= n.
    Injective {
        #[command(flatten)]
        cat: CatOpts,
        #[arg(long, default_value = "free:0")]
        module: String,
        #[arg(long)]
        n: usize,
    },
    /// The characteristic-p non-splitting example.
    Charp {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        trunc: usize,
    },
    /// Torsion pair of a module.
    Torsion {
        #[command(flatten)]
        cat: CatOpts,
        #[arg(long)]
        module: String,
        #[arg(long)]
        trunc: usize,
    },
    /// kappa(V, n) = dim Hom(V, kCe_n).
    Kappa {
        #[command(flatten)]
        cat: CatOpts,
        #[arg(long)]
        module: String,
        #[arg(long)]
        trunc: usize,
        #[arg(long)]
        n: usize,
    },
    /// Pieri sets and the first-row box-addition map.
    Pieri {
        /// Base partition, e.g. "2,1" (empty for the empty partition).
        #[arg(long, default_value = "")]
        partition: String,
        #[arg(long)]
        add: usize,
        /// Also check hbar bijectivity for this m at n = |base| + add.
        #[arg(long)]
        hbar_m: Option<usize>,
    },
    /// Representation-stability multiplicities of kCe_m over a window.
    Stability {
        #[arg(long, default_value = "trivial")]
        group: String,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
    },
    /// Run the full verification suite.
    Selftest,
}

/// Parse "free:1+atom:0" into a module.
fn parse_module(
    cat: &Category,
    spec: &str,
    trunc: usize,
    field: FieldSpec,
) -> Result<Arc<TruncatedModule>> {
    let mut acc: Option<Arc<TruncatedModule>> = None;
    for part in spec.split('+') {
        let (kind, deg) = part
            .split_once(':')
            .ok_or_else(|| Error::InvalidArgument(format!("bad module spec '{part}'")))?;
        let m: usize = deg
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad degree in '{part}'")))?;
        let module = match kind {
            "free" => free_module(cat, m, trunc, field)?,
            "atom" => atom(cat, m, trunc, field)?,
            other => {
                return Err(Error::InvalidArgument(format!(
                    "unknown module kind '{other}'"
                )))
            }
        };
        acc = Some(match acc {
            None => module,
            Some(prev) => direct_sum(&prev, &module)?,
        });
    }
    acc.ok_or_else(|| Error::InvalidArgument("empty module spec".into()))
}

struct Outcome {
    command: &'static str,
    config: serde_json::Value,
    results: serde_json::Value,
    checks: Vec<Check>,
    caveats: Vec<String>,
}

impl Outcome {
    fn from_report(command: &'static str, config: serde_json::Value, report: Report) -> Outcome {
        Outcome {
            command,
            config,
            results: serde_json::json!({ "dims": report.dims }),
            checks: report.checks,
            caveats: report.caveats,
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Morphisms { cat, m, n, list } => {
            let category = cat.category()?;
            let all = category.enumerate(*m, *n);
            let closed = category.hom_size(*m, *n);
            let mut results = serde_json::json!({ "count": all.len(), "closed_form": closed });
            if *list {
                results["morphisms"] = serde_json::Value::Array(
                    all.iter()
                        .map(|a| serde_json::Value::from(category.describe(a)))
                        .collect(),
                );
            }
            let mut config = cat.config_json();
            config["m"] = (*m).into();
            config["n"] = (*n).into();
            Ok(Outcome {
                command: "morphisms",
                config,
                results,
                checks: vec![Check::new(
                    "count_matches_closed_form",
                    all.len() as u64 == closed,
                    format!("{} vs {}", all.len(), closed),
                )],
                caveats: vec![],
            })
        }
        Command::FreeDims { cat, m, trunc } => {
            let category = cat.category()?;
            let f = free_module(&category, *m, *trunc, cat.field()?)?;
            let mut config = cat.config_json();
            config["m"] = (*m).into();
            config["trunc"] = (*trunc).into();
            let closed: Vec<u64> = (0..=*trunc).map(|j| category.hom_size(*m, j)).collect();
            let ok = f.dims.iter().map(|&d| d as u64).collect::<Vec<_>>() == closed;
            Ok(Outcome {
                command: "free-dims",
                config,
                results: serde_json::json!({ "dims": f.dims }),
                checks: vec![Check::new("dims_match_closed_form", ok, String::new())],
                caveats: vec![],
            })
        }
        Command::ShiftIso { cat, n, trunc } => {
            let category = cat.category()?;
            let (_, report) = phi_iso(&category, *n, *trunc, cat.field()?)?;
            let mut config = cat.config_json();
            config["n"] = (*n).into();
            config["trunc"] = (*trunc).into();
            Ok(Outcome::from_report("shift-iso", config, report))
        }
        Command::Coind {
            cat,
            m,
            trunc,
            compare_hom,
        } => {
            let category = cat.category()?;
            let field = cat.field()?;
            let qf = coind_free(&category, *m, *trunc, field)?;
            let mut checks = Vec::new();
            let mut caveats = Vec::new();
            let mut results = serde_json::json!({ "dims": qf.module.dims });
            if *compare_hom {
                let f = free_module(&category, *m, *trunc, field)?;
                let qh = coind_hom(&category, &f)?;
                checks.push(Check::new(
                    "dims_match_hom_definition",
                    qf.module.dims == qh.module.dims,
                    format!("{:?} vs {:?}", qf.module.dims, qh.module.dims),
                ));
                results["hom_dims"] = serde_json::json!(qh.module.dims);
                for (n, ok) in qh.reliable.iter().enumerate() {
                    if !ok {
                        caveats.push(format!("degree {n} is boundary-unreliable"));
                    }
                }
            }
            let mut config = cat.config_json();
            config["m"] = (*m).into();
            config["trunc"] = (*trunc).into();
            Ok(Outcome {
                command: "coind",
                config,
                results,
                checks,
                caveats,
            })
        }
        Command::VerifyFig { group, m, trunc } => {
            let category = Category::Fig(GroupSpec::parse(group)?);
            let out = theta(&category, *m, *trunc, FieldSpec::Rational)?;
            let config = serde_json::json!({ "group": group, "m": m, "trunc": trunc });
            let mut outcome = Outcome::from_report("verify-fig", config, out.report);
            if cli.witnesses {
                outcome.results["iso"] = out.iso.to_json();
            }
            Ok(outcome)
        }
        Command::VerifyVi {
            p,
            m,
            trunc,
            samples,
        } => {
            if *p >= 1 << 20 || !figvi::scalar::is_prime(*p) {
                return Err(Error::InvalidArgument(format!("bad prime {p}")));
            }
            let category = Category::Vi(*p);
            let out = pi_map(&category, *m, *trunc, FieldSpec::Rational)?;
            let mut report = out.report;
            let checked = key_identity_sweep(*p, *samples, cli.seed)?;
            report.push(
                "key_identity",
                checked == *samples,
                format!("{checked} random admissible tuples"),
            );
            let config = serde_json::json!({ "p": p, "m": m, "trunc": trunc });
            let mut outcome = Outcome::from_report("verify-vi", config, report);
            if cli.witnesses {
                outcome.results["pi"] = out.pi.to_json();
            }
            Ok(outcome)
        }
        Command::Adjunction { trunc } => {
            let report = selftest::adjunction_report(*trunc)?;
            Ok(Outcome::from_report(
                "adjunction",
                serde_json::json!({ "trunc": trunc }),
                report,
            ))
        }
        Command::Ext1 {
            cat,
            source,
            target,
            trunc,
        } => {
            let category = cat.category()?;
            let field = cat.field()?;
            let v = parse_module(&category, source, *trunc, field)?;
            let w = parse_module(&category, target, *trunc, field)?;
            let e = ext1(&v, &w)?;
            let mut config = cat.config_json();
            config["source"] = source.clone().into();
            config["target"] = target.clone().into();
            config["trunc"] = (*trunc).into();
            Ok(Outcome {
                command: "ext1",
                config,
                results: serde_json::json!({
                    "dim": e.dim,
                    "hom_k_dim": e.hom_k_dim,
                    "image_rank": e.image_rank,
                }),
                checks: vec![],
                caveats: vec![],
            })
        }
        Command::Injective { cat, module, n } => {
            let category = cat.category()?;
            let v = parse_module(&category, module, *n, cat.field()?)?;
            let report = injective_test(&v, *n)?;
            let mut config = cat.config_json();
            config["module"] = module.clone().into();
            config["n"] = (*n).into();
            Ok(Outcome::from_report("injective", config, report))
        }
        Command::Charp { p, trunc } => {
            let out = charp_counterexample(*p, *trunc)?;
            let config = serde_json::json!({ "p": p, "trunc": trunc });
            let mut outcome = Outcome::from_report("charp", config, out.report);
            outcome.results["u_dims"] = serde_json::json!(out.u_dims);
            outcome.results["split_dim_fp"] = out.split_dim_modp.into();
            outcome.results["split_dim_q"] = out.split_dim_rational.into();
            Ok(outcome)
        }
        Command::Torsion { cat, module, trunc } => {
            let category = cat.category()?;
            let v = parse_module(&category, module, *trunc, cat.field()?)?;
            let tp = torsion_pair(&v)?;
            let mut config = cat.config_json();
            config["module"] = module.clone().into();
            config["trunc"] = (*trunc).into();
            Ok(Outcome::from_report("torsion", config, tp.report))
        }
        Command::Kappa {
            cat,
            module,
            trunc,
            n,
        } => {
            let category = cat.category()?;
            let v = parse_module(&category, module, *trunc, cat.field()?)?;
            let value = kappa(&v, *n)?;
            let mut config = cat.config_json();
            config["module"] = module.clone().into();
            config["trunc"] = (*trunc).into();
            config["n"] = (*n).into();
            Ok(Outcome {
                command: "kappa",
                config,
                results: serde_json::json!({ "kappa": value }),
                checks: vec![],
                caveats: vec![],
            })
        }
        Command::Pieri {
            partition,
            add,
            hbar_m,
        } => {
            let base = Partition::parse(partition)?;
            let out = pieri_set(&base, *add);
            let mut checks = Vec::new();
            let mut results = serde_json::json!({
                "partitions": out.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            });
            if let Some(m) = hbar_m {
                let n = base.size() + add;
                if *m > n {
                    return Err(Error::InvalidArgument(format!(
                        "--hbar-m {m} exceeds n = |partition| + add = {n}"
                    )));
                }
                let rep = hbar_check(&base, *m, n);
                checks.push(Check::new(
                    "hbar_bijective",
                    rep.injective && rep.surjective,
                    format!(
                        "|P({n})| = {}, |P({})| = {}",
                        rep.size_n,
                        n + 1,
                        rep.size_n1
                    ),
                ));
                results["hbar"] = serde_json::to_value(&rep).expect("serializable");
            }
            Ok(Outcome {
                command: "pieri",
                config: serde_json::json!({ "partition": partition, "add": add }),
                results,
                checks,
                caveats: vec![],
            })
        }
        Command::Stability { group, m, from, to } => {
            let g = GroupSpec::parse(group)?;
            let category = Category::Fig(g.clone());
            let ctx = WreathContext::new(&g);
            let f = free_module(&category, *m, *to, FieldSpec::Rational)?;
            let report = stability_report(&ctx, &f, *m, *from..=*to)?;
            let rs3 = rs3_check(&ctx, &f, *from..=*to)?;
            let config = serde_json::json!({ "group": group, "m": m, "from": from, "to": to });
            let mut outcome = Outcome::from_report("stability", config, report);
            outcome.results["rs3"] = serde_json::to_value(&rs3).expect("serializable");
            Ok(outcome)
        }
        Command::Selftest => {
            let outcomes = selftest::run_all(cli.seed)?;
            let checks: Vec<Check> = outcomes
                .iter()
                .map(|o| {
                    Check::new(
                        format!("criterion_{}", o.id),
                        o.pass,
                        format!("{} ({} checks)", o.name, o.report.checks.len()),
                    )
                })
                .collect();
            Ok(Outcome {
                command: "selftest",
                config: serde_json::json!({}),
                results: serde_json::to_value(&outcomes).expect("serializable"),
                checks,
                caveats: vec![],
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let pass = outcome.checks.iter().all(|c| c.pass);
            let doc = serde_json::json!({
                "v": "v1",
                "command": outcome.command,
                "config": outcome.config,
                "seed": cli.seed,
                "results": outcome.results,
                "checks": outcome.checks,
                "caveats": outcome.caveats,
                "pass": pass,
            });
            let rendered = serde_json::to_string_pretty(&doc).expect("serializable");
            if cli.text {
                println!("{} (seed {})", outcome.command, cli.seed);
                for c in &outcome.checks {
                    println!(
                        "  [{}] {} {}",
                        if c.pass { "ok" } else { "FAIL" },
                        c.name,
                        c.detail
                    );
                }
                for c in &outcome.caveats {
                    println!("  caveat: {c}");
                }
            } else {
                println!("{rendered}");
            }
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, &rendered) {
                    eprintln!("error writing {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
