//! Command-line front end. Exit codes: 0 success, 1 mathematical
//! verification failure or depth exhaustion, 2 usage errors (clap's
//! default).

use clap::{Args, Parser, Subcommand};

use crate::chevalley::compute_constants;
use crate::error::Error;
use crate::liediff::build_ops;
use crate::oracle::singular_kernel;
use crate::posetrank::{export_hasse, rank_certify, report_to_json};
use crate::rat::{parse_rat, Rat};
use crate::rootsys::{
    build_root_system, enumerate_weyl, is_antidominant, lex_ordering, parse_root, reflection_word,
    sp_ordering, strongly_linked, RootSystem, Weight, WeylWord,
};
use crate::singvec::{solve_singular, SolveOutcome};
use crate::verify::{run_all, VerifyConfig};
use crate::weylrep::WeylCtx;

#[derive(Parser)]
#[command(
    name = "vermadiff",
    about = "Exact singular vectors in Verma modules via differential operators",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SystemArgs {
    /// Cartan type: one of A, B, C, D, E, F, G
    #[arg(long = "type", value_name = "LETTER")]
    cartan_type: String,
    /// Rank (at most 8)
    #[arg(long)]
    rank: usize,
}

impl SystemArgs {
    fn build(&self) -> Result<RootSystem, Error> {
        build_root_system(self.cartan_type.parse()?, self.rank)
    }
}

fn parse_lambda(s: &str, rank: usize) -> Result<Weight, Error> {
    let coords: Result<Vec<Rat>, Error> = s
        .split(',')
        .map(|p| parse_rat(p).ok_or_else(|| Error::Parse(format!("bad rational: {p}"))))
        .collect();
    let coords = coords?;
    if coords.len() != rank {
        return Err(Error::Parse(format!(
            "lambda needs {rank} coordinates, got {}",
            coords.len()
        )));
    }
    Ok(Weight::new(coords))
}

fn parse_word(s: &str) -> Result<WeylWord, Error> {
    let idx: Result<Vec<usize>, _> = s.split(',').map(|p| p.trim().parse::<usize>()).collect();
    let idx = idx.map_err(|_| Error::Parse(format!("bad word: {s}")))?;
    if idx.iter().any(|&i| i == 0) {
        return Err(Error::Parse(
            "word letters are 1-based simple indices".into(),
        ));
    }
    Ok(WeylWord(idx.into_iter().map(|i| i - 1).collect()))
}

#[derive(Subcommand)]
enum Command {
    /// Print the root system as JSON.
    Roots(SystemArgs),
    /// Dump the zeta, eta and d operators for a highest weight.
    Operators {
        #[command(flatten)]
        sys: SystemArgs,
        /// Coroot-pairing coordinates of lambda, e.g. "-1,1/2"
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// Use the symplectic PBW ordering instead of the lexicographic one
        #[arg(long)]
        sp_order: bool,
        /// Also print the structure-constant table as JSON triples
        #[arg(long)]
        constants: bool,
    },
    /// Print w(1) for every Weyl element (rank <= 3) or for a given word.
    WeylOrbit {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// Truncation depth
        #[arg(long, default_value_t = 12)]
        depth: i64,
        /// Comma-separated 1-based simple indices, leftmost applied last
        #[arg(long)]
        word: Option<String>,
    },
    /// Compute the singular vector (or truncated series) for a Weyl element.
    Singular {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// Positive root gamma (as "e1+e2" or simple-root coordinates);
        /// the element is the reflection s_gamma
        #[arg(long, conflicts_with = "weyl_word")]
        root: Option<String>,
        /// Explicit word, e.g. "2,1,2"
        #[arg(long)]
        weyl_word: Option<String>,
        #[arg(long, default_value_t = 12)]
        depth: i64,
        /// Output format: text or json
        #[arg(long, default_value = "text")]
        format: String,
        /// Use the symplectic PBW ordering (type C only)
        #[arg(long)]
        sp_order: bool,
    },
    /// Strong-linkage check between two weights, with a witness chain;
    /// without --mu, enumerate every linked weight within the height bound.
    Linkage {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<String>,
        /// Height bound for the enumeration when --mu is omitted
        #[arg(long, default_value_t = 8)]
        bound: i64,
    },
    /// Brute-force kernel of the raising operators on a weight space.
    OracleCheck {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
    /// Certify that A(Phi) has full rank, layer by layer.
    RankCheck {
        #[command(flatten)]
        sys: SystemArgs,
        /// Restrict the report to one height layer
        #[arg(long)]
        layer: Option<usize>,
        /// Write the Hasse diagram in DOT format to this path
        #[arg(long)]
        dot: Option<String>,
    },
    /// Run the full verification suite.
    VerifyAll {
        /// Seed for the random probes
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        /// Truncation depth
        #[arg(long, default_value_t = 12)]
        depth: i64,
        /// Rank bound for the poset-rank sweep (at most 8)
        #[arg(long, default_value_t = 8)]
        max_rank: usize,
    },
}

fn run(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::Roots(sys) => {
            let rs = sys.build()?;
            println!("{}", serde_json::to_string_pretty(&rs.to_json()).unwrap());
            Ok(0)
        }
        Command::Operators {
            sys,
            lambda,
            sp_order,
            constants,
        } => {
            let rs = sys.build()?;
            let lam = parse_lambda(&lambda, rs.rank)?;
            let ord = if sp_order {
                sp_ordering(&rs)?
            } else {
                lex_ordering(&rs)
            };
            let sc = compute_constants(&rs)?;
            if constants {
                println!("# structure constants (alpha, beta, N); signed 1-based root ids");
                println!("{}", sc.to_json());
            }
            let ops = build_ops(&rs, &ord, &sc, &lam)?;
            println!("# variables (PBW order)");
            for p in 0..rs.m {
                println!("x{} = x_[{}]", p + 1, rs.root_label(ord.root_id(p)));
            }
            println!("# zeta (Cartan action)");
            for (di, z) in ops.zeta.iter().enumerate() {
                println!("zeta_{} = {}", di + 1, z.to_text());
            }
            println!("# eta (lowering action)");
            for p in 0..rs.m {
                println!(
                    "eta[{}] = {}",
                    rs.root_label(ord.root_id(p)),
                    ops.eta[p].to_text()
                );
            }
            println!("# d (raising action)");
            for p in 0..rs.m {
                println!(
                    "d[{}] = {}",
                    rs.root_label(ord.root_id(p)),
                    ops.d[p].to_text()
                );
            }
            Ok(0)
        }
        Command::WeylOrbit {
            sys,
            lambda,
            depth,
            word,
        } => {
            let rs = sys.build()?;
            let lam = parse_lambda(&lambda, rs.rank)?;
            let ord = lex_ordering(&rs);
            let sc = compute_constants(&rs)?;
            let ctx = WeylCtx::new(&rs, &ord, &sc, lam, depth)?;
            let words = match word {
                Some(w) => vec![parse_word(&w)?],
                None => {
                    if rs.rank > 3 {
                        return Err(Error::Unsupported(
                            "full orbit is limited to rank <= 3; pass --word".into(),
                        ));
                    }
                    enumerate_weyl(&rs, 100_000)?
                }
            };
            for w in words {
                let f = ctx.w1(&w)?;
                println!("{w}(1) = {}", f.to_text(&ord));
            }
            Ok(0)
        }
        Command::Singular {
            sys,
            lambda,
            root,
            weyl_word,
            depth,
            format,
            sp_order,
        } => {
            let rs = sys.build()?;
            let lam = parse_lambda(&lambda, rs.rank)?;
            let ord = if sp_order {
                sp_ordering(&rs)?
            } else {
                lex_ordering(&rs)
            };
            let sc = compute_constants(&rs)?;
            let w = match (root, weyl_word) {
                (Some(r), None) => reflection_word(&rs, parse_root(&rs, &r)?),
                (None, Some(ww)) => parse_word(&ww)?,
                _ => {
                    return Err(Error::Parse(
                        "pass exactly one of --root or --weyl-word".into(),
                    ))
                }
            };
            let ctx = WeylCtx::new(&rs, &ord, &sc, lam, depth)?;
            match solve_singular(&ctx, &w)? {
                SolveOutcome::Polynomial { vector, chain, mu } => {
                    if format == "json" {
                        let doc = serde_json::json!({
                            "branch": "polynomial",
                            "word": w.0.iter().map(|i| i + 1).collect::<Vec<_>>(),
                            "mu": mu.to_strings(),
                            "chain": chain.gammas.iter().map(|&g| rs.root_label(g)).collect::<Vec<_>>(),
                            "vector": vector.to_json(),
                            "variables": (0..rs.m).map(|p| rs.root_label(ord.root_id(p))).collect::<Vec<_>>(),
                        });
                        println!("{}", serde_json::to_string_pretty(&doc).unwrap());
                    } else {
                        println!("weight: ({})", mu.to_strings().join(", "));
                        println!("singular vector: {}", vector.to_text());
                    }
                    Ok(0)
                }
                SolveOutcome::Truncated { series, mu } => {
                    if format == "json" {
                        let doc = serde_json::json!({
                            "branch": "series",
                            "word": w.0.iter().map(|i| i + 1).collect::<Vec<_>>(),
                            "mu": mu.to_strings(),
                            "series": series.to_text(&ord),
                            "depth": series.depth,
                        });
                        println!("{}", serde_json::to_string_pretty(&doc).unwrap());
                    } else {
                        println!("weight: ({})", mu.to_strings().join(", "));
                        println!("not strongly linked; truncated series:");
                        println!("{}", series.to_text(&ord));
                    }
                    Ok(0)
                }
            }
        }
        Command::Linkage {
            sys,
            lambda,
            mu,
            bound,
        } => {
            let rs = sys.build()?;
            let lam = parse_lambda(&lambda, rs.rank)?;
            let Some(mu) = mu else {
                let all = crate::singvec::all_singular_weights(&rs, &lam, bound);
                println!("{} linked weights within height {bound}:", all.len());
                for (w, chain) in &all {
                    let steps: Vec<String> =
                        chain.gammas.iter().map(|&g| rs.root_label(g)).collect();
                    println!(
                        "  ({})  via [{}]",
                        w.to_strings().join(", "),
                        steps.join(", ")
                    );
                }
                return Ok(0);
            };
            let mu = parse_lambda(&mu, rs.rank)?;
            match strongly_linked(&rs, &lam, &mu) {
                Some(chain) => {
                    println!("strongly linked via:");
                    let mut cur = lam.clone();
                    for (k, &g) in chain.gammas.iter().enumerate() {
                        let next = &chain.weights[k];
                        println!(
                            "  ({}) --s_[{}]--> ({})",
                            cur.to_strings().join(", "),
                            rs.root_label(g),
                            next.to_strings().join(", ")
                        );
                        cur = next.clone();
                    }
                    if chain.gammas.is_empty() {
                        println!("  (equal weights)");
                    }
                    Ok(0)
                }
                None => {
                    println!(
                        "not strongly linked (lambda antidominant: {})",
                        is_antidominant(&rs, &lam)
                    );
                    Ok(1)
                }
            }
        }
        Command::OracleCheck { sys, lambda, mu } => {
            let rs = sys.build()?;
            let lam = parse_lambda(&lambda, rs.rank)?;
            let mu = parse_lambda(&mu, rs.rank)?;
            let ord = lex_ordering(&rs);
            let sc = compute_constants(&rs)?;
            let kern = singular_kernel(&rs, &ord, &sc, &lam, &mu);
            println!("kernel dimension: {}", kern.len());
            for v in &kern {
                println!("basis vector: {}", v.to_text());
            }
            Ok(0)
        }
        Command::RankCheck { sys, layer, dot } => {
            let rs = sys.build()?;
            let sc = compute_constants(&rs)?;
            let rep = rank_certify(&rs, &sc);
            if let Some(path) = dot {
                std::fs::write(&path, export_hasse(&rs))
                    .map_err(|e| Error::Unsupported(format!("cannot write {path}: {e}")))?;
            }
            let doc = match layer {
                Some(i) => {
                    let l = rep
                        .layers
                        .iter()
                        .find(|l| l.layer == i)
                        .ok_or_else(|| Error::Parse(format!("no layer {i}")))?;
                    serde_json::json!({
                        "layer": l.layer,
                        "rows": l.rows,
                        "cols": l.cols,
                        "rank": l.rank,
                        "full": l.full,
                        "central_cols": l.central_cols,
                        "central_det_odd": l.central_det_odd,
                        "prune_steps_ok": l.prune_steps_ok,
                    })
                }
                None => report_to_json(&rep),
            };
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            Ok(if rep.full { 0 } else { 1 })
        }
        Command::VerifyAll {
            seed,
            depth,
            max_rank,
        } => {
            let cfg = VerifyConfig {
                seed,
                depth,
                max_rank,
            };
            let reports = run_all(&cfg);
            let mut ok = true;
            for r in &reports {
                println!("{}", r.line());
                ok &= r.pass;
            }
            Ok(if ok { 0 } else { 1 })
        }
    }
}

/// Entry point used by the binary.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            // clap prints its own message; usage errors exit 2
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(Error::DepthExhausted(msg)) => {
            eprintln!("depth exhausted: {msg}");
            1
        }
        Err(Error::Parse(msg)) | Err(Error::InvalidType(msg)) | Err(Error::InvalidRank(msg)) => {
            eprintln!("usage error: {msg}");
            2
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_and_lambda_parsing() {
        assert_eq!(parse_word("2,1,2").unwrap().0, vec![1, 0, 1]);
        assert!(parse_word("0,1").is_err());
        let lam = parse_lambda("-1,1/2", 2).unwrap();
        assert_eq!(lam.c[1], crate::rat::ratio(1, 2));
        assert!(parse_lambda("1", 2).is_err());
    }
}
