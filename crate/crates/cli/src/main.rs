//! `jacpair`: command-line front end.

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use jacpair::corners::{self, CornerData, CSV_HEADER};
use jacpair::field::FieldElem;
use jacpair::intersection::{self, ShapeCorner};
use jacpair::laurent::LaurentPoly;
use jacpair::par::Exec;
use jacpair::piroot::{self, XiPolicy, DEFAULT_XI_TRIALS};
use jacpair::report;
use jacpair::selftest;
use jacpair::text::{parse_poly_in, parse_tower, print_poly, FieldSpec};
use jacpair::{Error, Exp, Result};

#[derive(Parser)]
#[command(name = "jacpair", version, about = "Exact π-root and intersection computations for pairs of bivariate polynomials")]
struct Cli {
    /// Coefficient field: q, qi, or tower:<file>
    #[arg(long, global = true, default_value = "q")]
    field: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct XiArg {
    /// ξ shift for the genericity certificate: none, auto, or a constant
    #[arg(long)]
    xi: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Intersection number I(P, Q) = deg_x Res_y(P, Q)
    Inum { p: String, q: String },
    /// Refinement tree of π-roots, or the final π-roots with --with/--xi
    Piroots {
        p: String,
        /// Partner polynomial used for δ and genericity
        #[arg(long = "with")]
        with: Option<String>,
        #[command(flatten)]
        xi: XiArg,
    },
    /// Major-root formula I_M with its expansion oracle
    Imajor {
        p: String,
        q: String,
        #[command(flatten)]
        xi: XiArg,
    },
    /// Minor-root bound I_m with the supporting relations
    Iminor {
        p: String,
        q: String,
        #[command(flatten)]
        xi: XiArg,
    },
    /// Decide and construct b = 2 corner certificates over a grid
    CornerB2 {
        #[arg(long)]
        a_max: i64,
        #[arg(long)]
        l_max: i64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Run without the thread pool
        #[arg(long)]
        sequential: bool,
    },
    /// Verify the certificate [G, R] = R^{k+1} for one (a, l, Δ)
    VerifyRg {
        #[arg(long)]
        a: i64,
        #[arg(long)]
        l: i64,
        #[arg(long)]
        delta: i64,
    },
    /// Scan the ϑ/t′ conditions of a corner
    Theta {
        #[arg(long, allow_negative_numbers = true)]
        a: i64,
        #[arg(long, allow_negative_numbers = true)]
        b: i64,
        #[arg(long, allow_negative_numbers = true)]
        c: i64,
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
        #[arg(long)]
        l: i64,
    },
    /// Shape-level I_M from a JSON list of corners
    ShapeIm {
        /// JSON file: {"corners": [{"roots": 4, "b": 3, "k": 1, "l": 4}]}
        #[arg(long)]
        spec: String,
    },
    /// Run the invariant suites
    Selftest {
        /// Number of random pairs in the corpus
        #[arg(long, default_value_t = 50)]
        pairs: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Inum { .. } => "inum",
            Command::Piroots { .. } => "piroots",
            Command::Imajor { .. } => "imajor",
            Command::Iminor { .. } => "iminor",
            Command::CornerB2 { .. } => "corner-b2",
            Command::VerifyRg { .. } => "verify-rg",
            Command::Theta { .. } => "theta",
            Command::ShapeIm { .. } => "shape-im",
            Command::Selftest { .. } => "selftest",
        }
    }
}

/// Polynomial arguments; `-` takes the next line of standard input.
struct Inputs {
    field: FieldSpec,
    stdin: Option<Vec<String>>,
}

impl Inputs {
    fn new(field: &str) -> Result<Inputs> {
        let field = match field {
            "q" => FieldSpec::Rationals,
            "qi" => FieldSpec::Gaussian,
            f => match f.strip_prefix("tower:") {
                Some(path) => {
                    let text = std::fs::read_to_string(path).map_err(|e| Error::Domain(format!("{path}: {e}")))?;
                    FieldSpec::Tower(parse_tower(&text)?)
                }
                None => return Err(Error::Domain(format!("unknown field '{f}' (expected q, qi or tower:<file>)"))),
            },
        };
        Ok(Inputs { field, stdin: None })
    }

    fn poly(&mut self, arg: &str) -> Result<LaurentPoly> {
        if arg != "-" {
            return parse_poly_in(arg, &self.field);
        }
        let lines = self.stdin.get_or_insert_with(|| {
            let mut s = String::new();
            let _ = std::io::stdin().read_to_string(&mut s);
            s.lines().rev().filter(|l| !l.trim().is_empty()).map(str::to_string).collect()
        });
        let line = lines.pop().ok_or_else(|| Error::Domain("standard input has no polynomial left".into()))?;
        parse_poly_in(&line, &self.field)
    }

    fn xi(&mut self, arg: &XiArg, default: XiPolicy) -> Result<XiPolicy> {
        match arg.xi.as_deref() {
            None => Ok(default),
            Some("auto") => Ok(XiPolicy::Auto(DEFAULT_XI_TRIALS)),
            Some("none") => Ok(XiPolicy::None),
            Some(v) => {
                let c = self.poly(v)?;
                match c.terms().collect::<Vec<_>>().as_slice() {
                    [] => Ok(XiPolicy::Fixed(FieldElem::zero())),
                    [(e, c)] if e.x == Exp::from_integer(0) && e.y == 0 => Ok(XiPolicy::Fixed(c.clone())),
                    _ => Err(Error::Domain(format!("--xi expects a constant, got '{v}'"))),
                }
            }
        }
    }
}

/// What a command prints on success.
enum Output {
    Json(Value),
    Text(String, i32),
}

fn run(cli: &Cli) -> Result<Output> {
    let mut inp = Inputs::new(&cli.field)?;
    let json = |v: Value| Ok(Output::Json(v));
    match &cli.command {
        Command::Inum { p, q } => {
            let (p, q) = (inp.poly(p)?, inp.poly(q)?);
            let res = intersection::resultant_y(&p, &q)?;
            let i = res.deg_x().ok_or(Error::ResultantZero)?;
            json(json!({ "P": print_poly(&p), "Q": print_poly(&q), "i": i.to_string(), "resultant": print_poly(&res) }))
        }
        Command::Piroots { p, with, xi } => {
            let p = inp.poly(p)?;
            let q = with.as_deref().map(|q| inp.poly(q)).transpose()?;
            if q.is_none() && xi.xi.is_none() {
                return json(json!({ "P": print_poly(&p), "tree": piroot::build_tree(&p)?.to_json() }));
            }
            let policy = inp.xi(xi, XiPolicy::Auto(DEFAULT_XI_TRIALS))?;
            let e = piroot::enumerate_final(&p, q.as_ref(), &policy)?;
            json(json!({ "P": print_poly(&p), "enumeration": e.to_json() }))
        }
        Command::Imajor { p, q, xi } => {
            let (p, q) = (inp.poly(p)?, inp.poly(q)?);
            let policy = inp.xi(xi, XiPolicy::Auto(DEFAULT_XI_TRIALS))?;
            json(intersection::i_major(&p, &q, &policy)?.to_json())
        }
        Command::Iminor { p, q, xi } => {
            let (p, q) = (inp.poly(p)?, inp.poly(q)?);
            let policy = inp.xi(xi, XiPolicy::Auto(DEFAULT_XI_TRIALS))?;
            json(intersection::i_minor_bound(&p, &q, &policy)?.to_json())
        }
        Command::CornerB2 { a_max, l_max, format, sequential } => {
            let exec = if *sequential { Exec::Sequential } else { Exec::Parallel };
            let cells = corners::corner_grid(*a_max, *l_max, exec)?;
            let witnesses: Vec<_> = cells.iter().flat_map(|c| c.witnesses.iter()).collect();
            match format {
                Format::Csv => {
                    let mut s = format!("{CSV_HEADER}\n");
                    for w in &witnesses {
                        s += &w.csv_row();
                        s.push('\n');
                    }
                    Ok(Output::Text(s, 0))
                }
                Format::Json => json(json!({
                    "a_max": a_max,
                    "l_max": l_max,
                    "all_verified": cells.iter().all(|c| c.ok()),
                    "rows": witnesses.iter().map(|w| w.to_json()).collect::<Vec<_>>(),
                })),
            }
        }
        Command::VerifyRg { a, l, delta } => json(corners::b2_construct(*a, *l, *delta)?.to_json()),
        Command::Theta { a, b, c, d, l } => json(corners::theta_condition(&CornerData::new(*a, *l, *b, *c, *d)?).to_json()),
        Command::ShapeIm { spec } => {
            let text = std::fs::read_to_string(spec).map_err(|e| Error::Domain(format!("{spec}: {e}")))?;
            let corners = parse_shape_spec(&text)?;
            let im = intersection::shape_level_im(&corners)?;
            json(json!({ "i_major": im.to_string(), "coefficient": im.coeff.to_string() }))
        }
        Command::Selftest { pairs } => {
            let cfg = selftest::Config { corpus_pairs: *pairs, ..Default::default() };
            let mut lines = String::new();
            let results = selftest::run_all(&cfg, |r| {
                eprintln!("{}", r.line());
                lines += &r.line();
                lines.push('\n');
            });
            let failed = results.iter().filter(|r| !r.passed()).count();
            lines += &format!("{} of {} suites passed\n", results.len() - failed, results.len());
            Ok(Output::Text(lines, if failed == 0 { 0 } else { 1 }))
        }
    }
}

fn parse_shape_spec(text: &str) -> Result<Vec<ShapeCorner>> {
    let bad = |m: &str| Error::Domain(format!("shape spec: {m}"));
    let v: Value = serde_json::from_str(text).map_err(|e| bad(&e.to_string()))?;
    let list = v.get("corners").and_then(Value::as_array).ok_or_else(|| bad("missing \"corners\" array"))?;
    list.iter()
        .map(|c| {
            let field = |k: &str| c.get(k).and_then(Value::as_i64).ok_or_else(|| bad(&format!("corner needs integer \"{k}\"")));
            Ok(ShapeCorner { roots: field("roots")?, b: field("b")?, k: field("k")?, l: field("l")? })
        })
        .collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = cli.command.name();
    match run(&cli) {
        Ok(Output::Json(v)) => {
            print!("{}", report::render(&report::envelope(name, v)));
            ExitCode::SUCCESS
        }
        Ok(Output::Text(s, code)) => {
            print!("{s}");
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("jacpair {name}: {e}");
            print!("{}", report::render(&report::error_envelope(name, &e)));
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
