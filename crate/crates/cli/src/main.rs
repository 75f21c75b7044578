use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use abkp_core::oracle::{self, NewtonPolygon};
use abkp_core::values::{format_rational, parse_rational};
use abkp_core::{
    alpha_invariant, check_valuation_axioms, enumerate_monic, falsify_abkp, is_distinguished_pair,
    newton_polygon, psi_member, root_difference_valuations, saturated_chain, value_group_below,
    ChainSpec, Error, ExtValue, Falsification, Frame, Poly, ResidualPoly, SearchBounds, Strategy,
    ValuationChain,
};
use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "abkp", version, about = "Exact computations with valuations on Q_p(X)")]
struct Cli {
    /// Print JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct ChainArg {
    /// Chain spec file.
    #[arg(long, conflicts_with = "inline", required_unless_present = "inline")]
    chain: Option<PathBuf>,
    /// Chain spec as an inline JSON string.
    #[arg(long)]
    inline: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// w(f).
    Eval {
        #[command(flatten)]
        chain: ChainArg,
        #[arg(long)]
        poly: String,
    },
    /// epsilon(f).
    Epsilon {
        #[command(flatten)]
        chain: ChainArg,
        #[arg(long)]
        poly: String,
    },
    /// Optimizing-root value of a monic f.
    Delta {
        #[command(flatten)]
        chain: ChainArg,
        #[arg(long)]
        poly: String,
    },
    /// Q-expansion coefficients of f.
    Expand {
        #[arg(long)]
        q: String,
        #[arg(long)]
        poly: String,
    },
    /// w_Q(f).
    Truncate {
        #[command(flatten)]
        chain: ChainArg,
        #[arg(long)]
        q: String,
        #[arg(long)]
        poly: String,
    },
    /// Indices attaining w_Q(f) and the largest of them.
    Support {
        #[command(flatten)]
        chain: ChainArg,
        #[arg(long)]
        q: String,
        #[arg(long)]
        poly: String,
    },
    /// Appends a level and prints the new chain spec.
    Augment {
        #[command(flatten)]
        chain: ChainArg,
        #[arg(long)]
        q: String,
        #[arg(long)]
        value: String,
    },
    /// Frame of a chain key polynomial.
    Frame {
        #[command(flatten)]
        chain: ChainArg,
        #[arg(long)]
        q: String,
    },
    /// Lifting of a residual polynomial G(Y).
    Lift {
        #[command(flatten)]
        chain: ChainArg,
        #[arg(long)]
        q: String,
        #[arg(long)]
        g: String,
    },
    /// Residual polynomial of a monic F.
    Residual {
        #[command(flatten)]
        chain: ChainArg,
        #[arg(long)]
        q: String,
        #[arg(long)]
        poly: String,
    },
    /// Membership of F in psi(Q).
    Psi {
        #[command(flatten)]
        chain: ChainArg,
        #[arg(long)]
        q: String,
        #[arg(long)]
        poly: String,
    },
    /// alpha(Q).
    Alpha {
        #[command(flatten)]
        chain: ChainArg,
        #[arg(long)]
        q: String,
    },
    /// Whether (F, Q) is a distinguished pair.
    Distinguished {
        #[command(flatten)]
        chain: ChainArg,
        #[arg(long)]
        f: String,
        #[arg(long)]
        q: String,
        /// Also run the root-side oracle with a linear catalog plus the chain keys.
        #[arg(long)]
        oracle: bool,
    },
    /// Saturated distinguished chain certificate.
    Chain {
        #[command(flatten)]
        chain: ChainArg,
    },
    /// Searches for a smaller-degree f with epsilon(f) >= epsilon(Q).
    AbkpFalsify {
        #[command(flatten)]
        chain: ChainArg,
        #[arg(long)]
        q: String,
        #[arg(long, default_value_t = 9)]
        height: u64,
        #[arg(long, default_value_t = 1)]
        p_power_cap: u32,
        #[arg(long)]
        sequential: bool,
    },
    /// Newton polygon: valuations of the roots of f.
    Np {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        p: u64,
    },
    /// Valuations of the differences of roots of f and g.
    Rootdiff {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        p: u64,
    },
    /// Valuation axioms of w (or w_Q) on seeded random pairs.
    Axioms {
        #[command(flatten)]
        chain: ChainArg,
        #[arg(long)]
        q: Option<String>,
        #[arg(long, default_value_t = 200)]
        pairs: usize,
        #[arg(long, default_value_t = 6)]
        degree: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Monic polynomials of a degree with bounded coefficients.
    Enum {
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        height: u64,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 0)]
        p_power_cap: u32,
    },
}

#[derive(Serialize, Deserialize)]
struct LevelDoc {
    poly: String,
    value: String,
}

#[derive(Serialize, Deserialize)]
struct ChainDoc {
    p: u64,
    levels: Vec<LevelDoc>,
}

fn parse_err(e: impl std::fmt::Display) -> Error {
    Error::Parse(e.to_string())
}

fn load_chain(arg: &ChainArg) -> Result<ValuationChain, Error> {
    let text = match (&arg.chain, &arg.inline) {
        (Some(path), _) => std::fs::read_to_string(path).map_err(|e| parse_err(format!("{}: {e}", path.display())))?,
        (None, Some(s)) => s.clone(),
        (None, None) => return Err(parse_err("a chain is required")),
    };
    let doc: ChainDoc = serde_json::from_str(&text).map_err(parse_err)?;
    let levels = doc
        .levels
        .iter()
        .map(|l| Ok((parse_poly(&l.poly)?, l.value.parse::<ExtValue>()?)))
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(ChainSpec { p: doc.p, levels }.validate()?)
}

fn chain_doc(w: &ValuationChain) -> ChainDoc {
    ChainDoc {
        p: w.p(),
        levels: w
            .levels()
            .iter()
            .map(|l| LevelDoc {
                poly: l.key.to_string(),
                value: format_rational(&l.value),
            })
            .collect(),
    }
}

fn parse_poly(s: &str) -> Result<Poly, Error> {
    s.parse()
}

/// Plain text and JSON renderings of one result.
struct Out {
    text: String,
    json: Value,
}

fn out(text: impl Into<String>, json: Value) -> Out {
    Out { text: text.into(), json }
}

fn value(v: ExtValue) -> Out {
    out(v.to_string(), json!(v.to_string()))
}

fn run(cli: Cli) -> Result<Out, Error> {
    Ok(match cli.cmd {
        Cmd::Eval { chain, poly } => value(load_chain(&chain)?.eval(&parse_poly(&poly)?)),
        Cmd::Epsilon { chain, poly } => value(load_chain(&chain)?.epsilon(&parse_poly(&poly)?)?),
        Cmd::Delta { chain, poly } => value(load_chain(&chain)?.delta_opt(&parse_poly(&poly)?)?),
        Cmd::Expand { q, poly } => {
            let exp = parse_poly(&poly)?.q_expansion(&parse_poly(&q)?)?;
            let coeffs: Vec<String> = exp.coeffs.iter().map(|c| c.to_string()).collect();
            let text = coeffs.iter().enumerate().map(|(i, c)| format!("f_{i} = {c}")).collect::<Vec<_>>();
            out(text.join("\n"), json!({ "base": exp.base.to_string(), "coeffs": coeffs }))
        }
        Cmd::Truncate { chain, q, poly } => {
            let w = load_chain(&chain)?;
            value(w.truncation(&parse_poly(&q)?)?.eval(&parse_poly(&poly)?))
        }
        Cmd::Support { chain, q, poly } => {
            let w = load_chain(&chain)?;
            let (s, top) = w.truncation(&parse_poly(&q)?)?.support_and_top(&parse_poly(&poly)?)?;
            let list = s.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",");
            out(format!("S = {{{list}}}\ntop = {top}"), json!({ "support": s, "top": top }))
        }
        Cmd::Augment { chain, q, value } => {
            let w = load_chain(&chain)?;
            let gamma = parse_rational(&value)?;
            let ext = w.augment(&parse_poly(&q)?, &gamma)?;
            let doc = serde_json::to_value(chain_doc(&ext)).expect("serializable");
            out(doc.to_string(), doc)
        }
        Cmd::Frame { chain, q } => {
            let w = load_chain(&chain)?;
            let q = parse_poly(&q)?;
            let fr = Frame::build(&w, &q)?;
            let r = fr.report();
            let field = match &r.residue_field.modulus {
                Some(m) => format!("F_{}[t]/({m})", r.residue_field.p),
                None => format!("F_{}", r.residue_field.p),
            };
            let text = format!(
                "n = {}\ngamma = {}\nvalue group = {}\ne = {}\nh = {}\nresidue field = {field}",
                r.n,
                r.gamma,
                value_group_below(&w, &q)?,
                r.e,
                r.h
            );
            out(text, serde_json::to_value(&r).expect("serializable"))
        }
        Cmd::Lift { chain, q, g } => {
            let w = load_chain(&chain)?;
            let fr = Frame::build(&w, &parse_poly(&q)?)?;
            let g = ResidualPoly::parse(fr.residue_field(), &g)?;
            let f = fr.lift(&g)?;
            out(f.to_string(), json!(f.to_string()))
        }
        Cmd::Residual { chain, q, poly } => {
            let w = load_chain(&chain)?;
            let fr = Frame::build(&w, &parse_poly(&q)?)?;
            let g = fr.residual_polynomial(&parse_poly(&poly)?)?;
            out(g.to_string(), json!(g.to_string()))
        }
        Cmd::Psi { chain, q, poly } => {
            let w = load_chain(&chain)?;
            let v = psi_member(&w, &parse_poly(&q)?, &parse_poly(&poly)?)?;
            let verdict = if v.member { "member" } else { "not member" };
            let mut text = format!("{verdict}\nw_Q = {}\nw = {}", v.wq_value, v.w_value);
            if let Some(d) = v.degree_witness {
                text.push_str(&format!("\nsmaller discrepancy degree = {d}"));
            }
            out(
                text,
                json!({
                    "member": v.member,
                    "wq_value": v.wq_value.to_string(),
                    "w_value": v.w_value.to_string(),
                    "degree_witness": v.degree_witness,
                }),
            )
        }
        Cmd::Alpha { chain, q } => {
            let a = alpha_invariant(&load_chain(&chain)?, &parse_poly(&q)?);
            out(a.to_string(), json!(a.to_string()))
        }
        Cmd::Distinguished { chain, f, q, oracle } => {
            let w = load_chain(&chain)?;
            let (f, q) = (parse_poly(&f)?, parse_poly(&q)?);
            let d = is_distinguished_pair(&w, &f, &q)?;
            if !oracle {
                return Ok(out(d.to_string(), json!(d)));
            }
            let mut catalog: Vec<Poly> = enumerate_monic(1, 9, w.p(), 1)?.iter().collect();
            catalog.extend(w.levels().iter().map(|l| l.key.clone()));
            let rep = oracle::distinguished_pair_root_oracle(&f, &q, w.p(), &catalog)?;
            out(
                format!("{d}\noracle: {}", rep.verdict),
                json!({ "distinguished": d, "oracle": rep }),
            )
        }
        Cmd::Chain { chain } => {
            let cert = saturated_chain(&load_chain(&chain)?)?;
            let mut lines: Vec<String> = cert
                .chain
                .iter()
                .map(|l| format!("{}  value {}  epsilon {}", l.poly, l.value, l.epsilon))
                .collect();
            lines.extend(cert.links.iter().map(|l| format!("({}, {}) distinguished: {}", l.f, l.q, l.distinguished)));
            out(lines.join("\n"), serde_json::to_value(&cert).expect("serializable"))
        }
        Cmd::AbkpFalsify {
            chain,
            q,
            height,
            p_power_cap,
            sequential,
        } => {
            let w = load_chain(&chain)?;
            let strategy = if sequential { Strategy::Sequential } else { Strategy::default() };
            let bounds = SearchBounds { height, p_power_cap };
            match falsify_abkp(&w, &parse_poly(&q)?, bounds, strategy)? {
                Falsification::Disproved { witness, epsilon } => out(
                    format!("disproved by {witness} (epsilon {epsilon})"),
                    json!({ "verdict": "disproved", "witness": witness.to_string(), "epsilon": epsilon.to_string() }),
                ),
                Falsification::NotDisproved { checked } => out(
                    format!("not disproved ({checked} candidates)"),
                    json!({ "verdict": "not_disproved", "checked": checked }),
                ),
            }
        }
        Cmd::Np { poly, p } => {
            let NewtonPolygon { slopes, zero_roots } = newton_polygon(&parse_poly(&poly)?, p)?;
            out(
                format!("{slopes}\nzero roots = {zero_roots}"),
                json!({ "slopes": slopes, "zero_roots": zero_roots }),
            )
        }
        Cmd::Rootdiff { f, g, p } => match root_difference_valuations(&parse_poly(&f)?, &parse_poly(&g)?, p) {
            Ok(s) => out(s.to_string(), json!({ "differences": s })),
            Err(Error::SharedRoot {
                zero_roots,
                off_diagonal,
            }) => {
                return Err(Error::Domain(format!(
                    "shared root: {zero_roots} vanishing difference(s); others {off_diagonal}"
                )))
            }
            Err(e) => return Err(e),
        },
        Cmd::Axioms {
            chain,
            q,
            pairs,
            degree,
            seed,
        } => {
            let w = load_chain(&chain)?;
            let samples = random_pairs(w.p(), degree, pairs, seed);
            let rep = match q {
                Some(q) => {
                    let t = w.truncation(&parse_poly(&q)?)?;
                    check_valuation_axioms(|f| t.eval(f), &samples, Strategy::default())
                }
                None => check_valuation_axioms(|f| w.eval(f), &samples, Strategy::default()),
            };
            let mut lines = vec![format!("{} pairs, {} violations", rep.checked, rep.violations.len())];
            lines.extend(
                rep.violations
                    .iter()
                    .map(|v| format!("{:?} on ({}, {}): {} vs {}", v.kind, v.f, v.g, v.lhs, v.rhs)),
            );
            out(lines.join("\n"), serde_json::to_value(&rep).expect("serializable"))
        }
        Cmd::Enum {
            degree,
            height,
            p,
            p_power_cap,
        } => {
            let e = enumerate_monic(degree, height, p, p_power_cap)?;
            let all: Vec<String> = e.iter().map(|f| f.to_string()).collect();
            out(all.join("\n"), json!(all))
        }
    })
}

fn random_pairs(p: u64, degree: usize, n: usize, seed: u64) -> Vec<(Poly, Poly)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = (p * p * p) as i64;
    let mut poly = || loop {
        let d = rng.gen_range(0..=degree);
        let f = Poly::from_ints(&(0..=d).map(|_| rng.gen_range(-h..=h)).collect::<Vec<_>>());
        if !f.is_zero() {
            return f;
        }
    };
    (0..n).map(|_| (poly(), poly())).collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(o) => {
            let mut stdout = std::io::stdout().lock();
            let _ = if json {
                writeln!(stdout, "{}", o.json)
            } else {
                writeln!(stdout, "{}", o.text)
            };
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
