//! funcfield — exact analysis of finite-dimensional subspaces of K(x).
//!
//! Verbs: `analyze` an instance file end to end, `generate` instances
//! from the built-in families, `fuzz` batches through the analyzer,
//! `freiman` for the integer 3k-4 report, `selftest` for a quick sanity
//! run.
//!
//! Exit codes for `analyze`: 0 all applicable checks pass, 1 a
//! theorem-level check failed (a genuine finding; the input file is the
//! witness), 2 input error, 3 a place did not split over the base field.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use funcfield::analysis::{analyze, AnalysisOptions, Status, FINDING_IDS};
use funcfield::error::Error;
use funcfield::freiman::{freiman_3k4, monomial_space, sumset, IntSet};
use funcfield::generators::{FamilySpec, Gamma1Shape, InstanceSpec};
use funcfield::parse::{parse_field, parse_instance_file_with_field};
use funcfield::scalar::FieldSpec;

#[derive(Parser)]
#[command(name = "funcfield", version, about = "Exact subspace analysis over K(x)")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Analyze an instance file: filtration, genus sequence, divisors,
    /// Riemann-Roch space and the lemma checklist.
    Analyze {
        /// Instance file path.
        path: PathBuf,
        /// Emit the machine-readable JSON report.
        #[arg(long)]
        json: bool,
        /// Print the degree table.
        #[arg(long)]
        table: bool,
        /// Neededness analysis for this column (default: t).
        #[arg(long)]
        needed_col: Option<usize>,
        /// Refuse inputs above this dimension.
        #[arg(long, default_value_t = 24)]
        max_dim: usize,
        /// Seed for the sampling probes.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Override the field header (q or fp:P).
        #[arg(long)]
        field: Option<String>,
    },
    /// Print an instance file for one of the built-in families.
    Generate {
        /// gamma0 | gamma1a | gamma1b | degset | monomial | random-rr
        family: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        alpha: Option<i64>,
        /// Comma-separated integer set (monomial, degset).
        #[arg(long)]
        set: Option<String>,
        /// Divisor literal such as "5*inf+1*0" (random-rr).
        #[arg(long)]
        divisor: Option<String>,
        /// Pole location for degset.
        #[arg(long)]
        pole_alpha: Option<i64>,
        /// Comma-separated pole orders per basis element (degset).
        #[arg(long)]
        pole_orders: Option<String>,
        #[arg(long, default_value = "q")]
        field: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run seeded batches of generated instances through the analyzer
    /// and tally the findings; failures dump witness files.
    Fuzz {
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "q")]
        field: String,
        /// Divisor degree budget.
        #[arg(long, default_value_t = 6)]
        max_degree: i64,
        /// Finite pole budget per divisor.
        #[arg(long, default_value_t = 2)]
        max_poles: usize,
        /// Dimension budget.
        #[arg(long, default_value_t = 6)]
        max_dim: usize,
        /// Directory for witness files.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// 3k-4 report for a finite integer set, e.g. "0,1,2,4".
    Freiman { set: String },
    /// Quick internal sanity checks.
    Selftest,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Analyze {
            path,
            json,
            table,
            needed_col,
            max_dim,
            seed,
            field,
        } => cmd_analyze(path, json, table, needed_col, max_dim, seed, field),
        Cmd::Generate {
            family,
            n,
            alpha,
            set,
            divisor,
            pole_alpha,
            pole_orders,
            field,
            seed,
        } => cmd_generate(family, n, alpha, set, divisor, pole_alpha, pole_orders, field, seed),
        Cmd::Fuzz {
            count,
            seed,
            field,
            max_degree,
            max_poles,
            max_dim,
            out,
        } => cmd_fuzz(count, seed, field, max_degree, max_poles, max_dim, out),
        Cmd::Freiman { set } => cmd_freiman(&set),
        Cmd::Selftest => cmd_selftest(),
    }
}

fn exit_for(e: &Error) -> ExitCode {
    match e {
        Error::NonSplitPlace(_) => ExitCode::from(3),
        Error::InternalInvariant(_) => ExitCode::from(1),
        _ => ExitCode::from(2),
    }
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    exit_for(e)
}

#[allow(clippy::too_many_arguments)]
fn cmd_analyze(
    path: PathBuf,
    json: bool,
    table: bool,
    needed_col: Option<usize>,
    max_dim: usize,
    seed: u64,
    field: Option<String>,
) -> ExitCode {
    let text = match std::fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", path.display());
            return ExitCode::from(2);
        }
    };
    let field_override = match field.as_deref().map(parse_field).transpose() {
        Ok(f) => f,
        Err(e) => return fail(&e),
    };
    let opts = AnalysisOptions {
        needed_col,
        max_dim,
        gap_trials: 6,
        seed,
    };
    let analysis = parse_instance_file_with_field(&text, field_override)
        .and_then(|(_, gens)| analyze(&gens, &opts));
    match analysis {
        Err(e) => fail(&e),
        Ok(a) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&a.to_json()).unwrap());
            } else {
                print!("{}", a.render_text(table));
            }
            if a.any_failure() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
    }
}

fn parse_int_list(text: &str) -> Result<Vec<i64>, Error> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<i64>().map_err(|_| Error::Syntax {
                line: 1,
                col: 1,
                msg: format!("bad integer '{s}'"),
            })
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn cmd_generate(
    family: String,
    n: Option<usize>,
    alpha: Option<i64>,
    set: Option<String>,
    divisor: Option<String>,
    pole_alpha: Option<i64>,
    pole_orders: Option<String>,
    field: String,
    seed: u64,
) -> ExitCode {
    let field = match parse_field(&field) {
        Ok(f) => f,
        Err(e) => return fail(&e),
    };
    let missing = |what: &str| Error::Syntax {
        line: 1,
        col: 1,
        msg: format!("family '{family}' requires --{what}"),
    };
    let family_spec = match family.as_str() {
        "gamma0" => match n {
            Some(n) => FamilySpec::Gamma0 { n },
            None => return fail(&missing("n")),
        },
        "gamma1a" | "gamma1b" => {
            let shape = if family == "gamma1a" {
                Gamma1Shape::A
            } else {
                Gamma1Shape::B
            };
            match n {
                Some(n) => FamilySpec::Gamma1 {
                    shape,
                    n,
                    alpha: alpha.unwrap_or(1),
                },
                None => return fail(&missing("n")),
            }
        }
        "monomial" => match set.as_deref().map(parse_int_list).transpose() {
            Ok(Some(set)) => FamilySpec::Monomial { set },
            Ok(None) => return fail(&missing("set")),
            Err(e) => return fail(&e),
        },
        "degset" => {
            let set = match set.as_deref().map(parse_int_list).transpose() {
                Ok(Some(set)) => set,
                Ok(None) => return fail(&missing("set")),
                Err(e) => return fail(&e),
            };
            let pole = match (pole_alpha, pole_orders) {
                (Some(a), Some(orders)) => match parse_int_list(&orders) {
                    Ok(o) => Some((a, o.into_iter().map(|v| v.max(0) as u32).collect())),
                    Err(e) => return fail(&e),
                },
                (None, None) => None,
                _ => {
                    return fail(&Error::Syntax {
                        line: 1,
                        col: 1,
                        msg: "degset poles need both --pole-alpha and --pole-orders".into(),
                    })
                }
            };
            FamilySpec::DegSet { set, pole }
        }
        "random-rr" => match (divisor, n) {
            (Some(divisor), Some(n)) => FamilySpec::RandomRr { divisor, n },
            (None, _) => return fail(&missing("divisor")),
            (_, None) => return fail(&missing("n")),
        },
        other => {
            return fail(&Error::Syntax {
                line: 1,
                col: 1,
                msg: format!("unknown family '{other}'"),
            })
        }
    };
    let spec = InstanceSpec {
        family: family_spec,
        field,
        seed,
    };
    match spec.render_file() {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => fail(&e),
    }
}

fn random_spec(
    rng: &mut ChaCha8Rng,
    field: FieldSpec,
    max_degree: i64,
    max_poles: usize,
    max_dim: usize,
) -> InstanceSpec {
    let seed = rng.gen();
    let family = match rng.gen_range(0..6u8) {
        0..=2 => {
            let inf = rng.gen_range(1..=max_degree.max(1));
            let mut total = inf;
            let mut parts = vec![format!("{inf}*inf")];
            for _ in 0..rng.gen_range(0..=max_poles) {
                let alpha = rng.gen_range(-3..=3i64);
                let ord = rng.gen_range(1..=2i64);
                parts.push(format!("{ord}*{alpha}"));
                total += ord;
            }
            let n = rng.gen_range(2..=(total as usize + 1).min(max_dim.max(2)));
            FamilySpec::RandomRr {
                divisor: parts.join("+"),
                n,
            }
        }
        3..=4 => {
            let size = rng.gen_range(2..=8usize.min(max_dim.max(2)));
            let mut set = std::collections::BTreeSet::new();
            set.insert(0i64);
            while set.len() < size {
                set.insert(rng.gen_range(0..=10));
            }
            FamilySpec::Monomial {
                set: set.into_iter().collect(),
            }
        }
        _ => {
            let size = rng.gen_range(3..=6usize.min(max_dim.max(3)));
            let mut set = std::collections::BTreeSet::new();
            set.insert(0i64);
            while set.len() < size {
                set.insert(rng.gen_range(1..=max_degree.max(2)));
            }
            let set: Vec<i64> = set.into_iter().collect();
            let pole = if rng.gen_bool(0.5) {
                let alpha = rng.gen_range(-2..=2i64);
                // e_1 stays pole-free: a pole on the normalizer turns its
                // numerator into a denominator, which may not split
                let orders = set
                    .iter()
                    .enumerate()
                    .map(|(i, _)| {
                        if i > 0 && rng.gen_bool(0.3) {
                            rng.gen_range(1..=2u32)
                        } else {
                            0
                        }
                    })
                    .collect();
                Some((alpha, orders))
            } else {
                None
            };
            FamilySpec::DegSet { set, pole }
        }
    };
    InstanceSpec {
        family,
        field,
        seed,
    }
}

fn cmd_fuzz(
    count: usize,
    seed: u64,
    field: String,
    max_degree: i64,
    max_poles: usize,
    max_dim: usize,
    out: PathBuf,
) -> ExitCode {
    let field = match parse_field(&field) {
        Ok(f) => f,
        Err(e) => return fail(&e),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tallies: BTreeMap<&'static str, [usize; 3]> = BTreeMap::new();
    for id in FINDING_IDS {
        tallies.insert(id, [0, 0, 0]);
    }
    let mut analyzed = 0usize;
    let mut skipped = 0usize;
    let mut witnesses = Vec::new();
    for _ in 0..count {
        let spec = random_spec(&mut rng, field, max_degree, max_poles, max_dim);
        let text = match spec.render_file() {
            Ok(t) => t,
            Err(_) => {
                skipped += 1;
                continue;
            }
        };
        let opts = AnalysisOptions {
            needed_col: None,
            max_dim: max_dim.max(8),
            gap_trials: 4,
            seed: spec.seed,
        };
        let analysis = parse_instance_file_with_field(&text, None)
            .and_then(|(_, gens)| analyze(&gens, &opts));
        let a = match analysis {
            Ok(a) => a,
            Err(e) => {
                eprintln!("instance error ({e}); spec: {spec}");
                skipped += 1;
                continue;
            }
        };
        analyzed += 1;
        let mut failed_ids = Vec::new();
        for f in &a.findings {
            let slot = tallies.get_mut(f.id).expect("fixed checklist");
            match f.status {
                Status::Pass => slot[0] += 1,
                Status::Fail => {
                    slot[1] += 1;
                    failed_ids.push((f.id, f.witness.clone()));
                }
                Status::NotApplicable => slot[2] += 1,
            }
        }
        if !failed_ids.is_empty() {
            let name = out.join(format!("witness-{}.txt", spec.seed));
            let mut content = text.clone();
            for (id, w) in &failed_ids {
                content.push_str(&format!("# FAILED {id}: {}\n", w.as_deref().unwrap_or("")));
            }
            if let Err(e) = std::fs::write(&name, content) {
                eprintln!("error: cannot write witness {}: {e}", name.display());
            }
            witnesses.push((spec.seed, failed_ids));
        }
    }
    println!("fuzz: count={count} seed={seed} field={field}");
    println!("analyzed: {analyzed}  skipped: {skipped}");
    for id in FINDING_IDS {
        let [p, f, na] = tallies[id];
        println!("{id:8} pass={p} fail={f} n/a={na}");
    }
    println!("witnesses: {}", witnesses.len());
    for (seed, ids) in &witnesses {
        let names: Vec<&str> = ids.iter().map(|(id, _)| *id).collect();
        println!("  witness-{seed}.txt: {}", names.join(","));
    }
    if witnesses.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_freiman(set_text: &str) -> ExitCode {
    let elems = match parse_int_list(set_text) {
        Ok(v) if v.len() >= 2 => v,
        Ok(_) => {
            eprintln!("error: need at least two integers");
            return ExitCode::from(2);
        }
        Err(e) => return fail(&e),
    };
    let a = IntSet::new(elems);
    if a.len() < 2 {
        eprintln!("error: need at least two distinct integers");
        return ExitCode::from(2);
    }
    let report = freiman_3k4(&a);
    println!("A = {a}  (|A| = {})", a.len());
    let ss = sumset(&a);
    println!("A+A = {ss}  (|A+A| = {})", ss.len());
    println!(
        "hypothesis |A+A| <= 3|A|-4: {} ({} <= {})",
        if report.hypothesis_holds { "holds" } else { "fails" },
        report.sumset_size,
        3 * a.len() as i64 - 4
    );
    println!(
        "AP hull: start {} step {} length {}",
        report.hull.start, report.hull.step, report.hull.len
    );
    println!(
        "conclusion: hull length {} <= |A+A| - |A| + 1 = {}: {}",
        report.hull.len,
        report.bound,
        if report.conclusion_holds { "holds" } else { "FAILS" }
    );
    // the monomial embedding: gamma = |A+A| - 2|A| + 1, computed on the
    // actual subspace as a cross-check
    let shift: Vec<i64> = a.elems().iter().map(|v| v - a.min()).collect();
    let space = monomial_space(&IntSet::new(shift), FieldSpec::Q);
    let gamma = space.square().dim() as i64 - 2 * space.dim() as i64 + 1;
    assert_eq!(gamma, report.sumset_size as i64 - 2 * a.len() as i64 + 1);
    println!("monomial embedding: gamma = {gamma}");
    ExitCode::SUCCESS
}

fn cmd_selftest() -> ExitCode {
    let mut ok = true;
    let mut check = |label: &str, pass: bool| {
        println!("{} {label}", if pass { "ok  " } else { "FAIL" });
        ok &= pass;
    };

    let table1 = InstanceSpec {
        family: FamilySpec::Monomial {
            set: vec![0, 1, 2, 4, 5],
        },
        field: FieldSpec::Q,
        seed: 0,
    };
    let a = table1
        .realize()
        .and_then(|gens| analyze(&gens, &AnalysisOptions::default()));
    match a {
        Ok(a) => {
            check("table-1 genus sequence", a.profile.gamma_seq == vec![0, 0, 0, 1, 2]);
            check("table-1 divisor degree", a.minimal_divisor.degree() == 5);
            check(
                "table-1 needed column",
                a.needed.iter().map(|e| e.needed).collect::<Vec<_>>()
                    == vec![false, false, true, true, true],
            );
            check("table-1 no failures", !a.any_failure());
        }
        Err(e) => {
            eprintln!("error: {e}");
            check("table-1 analysis", false);
        }
    }

    let g0 = InstanceSpec {
        family: FamilySpec::Gamma0 { n: 6 },
        field: FieldSpec::Q,
        seed: 0,
    };
    match g0.realize().and_then(|g| analyze(&g, &AnalysisOptions::default())) {
        Ok(a) => check(
            "gamma0(6): equality in the bound",
            a.gamma() == 0 && a.conjecture.dim_ld == 6 && a.conjecture.holds,
        ),
        Err(_) => check("gamma0(6)", false),
    }

    for (tag, shape) in [("gamma1a", Gamma1Shape::A), ("gamma1b", Gamma1Shape::B)] {
        let spec = InstanceSpec {
            family: FamilySpec::Gamma1 {
                shape,
                n: 5,
                alpha: 1,
            },
            field: FieldSpec::Q,
            seed: 0,
        };
        match spec.realize().and_then(|g| analyze(&g, &AnalysisOptions::default())) {
            Ok(a) => check(tag, a.gamma() == 1 && !a.any_failure()),
            Err(_) => check(tag, false),
        }
    }

    // exhaustive 3k-4 on subsets of [0, 8]
    let mut freiman_ok = true;
    for mask in 0u32..(1 << 9) {
        if mask.count_ones() < 2 {
            continue;
        }
        let set: Vec<i64> = (0..9).filter(|i| mask & (1 << i) != 0).collect();
        let r = freiman_3k4(&IntSet::new(set));
        if r.hypothesis_holds && !r.conclusion_holds {
            freiman_ok = false;
        }
    }
    check("3k-4 exhaustive on [0,8]", freiman_ok);

    let x2 = funcfield::parse::parse_ratfunc("x^2", FieldSpec::Q).unwrap();
    let x3 = funcfield::parse::parse_ratfunc("x^3", FieldSpec::Q).unwrap();
    let x4 = funcfield::parse::parse_ratfunc("x^4", FieldSpec::Q).unwrap();
    let idx1 = funcfield::tower::luroth_generator(&[x2.clone(), x3])
        .and_then(|y| funcfield::tower::pole_count(&y));
    let idx2 = funcfield::tower::luroth_generator(&[x4, x2])
        .and_then(|y| funcfield::tower::pole_count(&y));
    check("luroth indices", idx1 == Ok(1) && idx2 == Ok(2));

    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
