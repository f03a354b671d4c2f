//! Command-line front end. [`run`] takes the argument list and output
//! streams so it can be driven from tests.

use std::io::Write;
use std::sync::{Arc, Mutex};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::cartier::{CartierError, CartierMap};
use crate::enumerate::{EnumerateError, Enumerator, FixedIdealSet, Limits, Strategy, DEFAULT_MAX_NODES};
use crate::ffield::GaloisField;
use crate::ideal::Ideal;
use crate::poly::{Polynomial, Ring};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_LIMIT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "fpure", version, about = "Fixed ideals of u*Phi_e on F_q[x_1..x_d]")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// e-th root ideal I_e of the ideal generated by GENS
    EthRoot {
        #[command(flatten)]
        ring: RingArgs,
        gens: Vec<String>,
    },
    /// Largest u*Phi_e-fixed ideal inside the ideal generated by GENS
    Hash {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        u: String,
        gens: Vec<String>,
    },
    /// Classify the ideal generated by GENS as fixed, compatible or neither
    CheckFixed {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        u: String,
        gens: Vec<String>,
    },
    /// List every u*Phi_e-fixed ideal
    Enumerate {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        u: String,
        /// Stop after visiting this many search nodes
        #[arg(long, env = "FPURE_MAX_NODES", default_value_t = DEFAULT_MAX_NODES)]
        max_nodes: u64,
        /// Stop after this many seconds of wall-clock time
        #[arg(long, env = "FPURE_MAX_SECONDS")]
        max_seconds: Option<f64>,
        /// Worker threads for sibling branches
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
        strategy: StrategyArg,
        /// Write JSON-lines search events to stderr
        #[arg(long)]
        trace: bool,
    },
}

#[derive(Args, Debug)]
struct RingArgs {
    /// Prime `p`, or `q:c0,c1,..,cf` for F_q = F_p[z]/(c0 + c1 z + .. + cf z^f)
    #[arg(long)]
    field: String,
    /// Comma-separated variable names
    #[arg(long)]
    vars: String,
    #[arg(long, default_value_t = 1)]
    e: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StrategyArg {
    Auto,
    Nakayama,
    Slice,
}

enum Failure {
    Usage(String),
    Internal(String),
}

impl From<CartierError> for Failure {
    fn from(e: CartierError) -> Self {
        match e {
            CartierError::IterationCap { .. } => Failure::Internal(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

struct Setup {
    ring: Ring,
    args: RingArgs,
}

impl Setup {
    fn new(args: RingArgs) -> Result<Setup, Failure> {
        let field = GaloisField::parse(&args.field).map_err(usage)?;
        let ring = Ring::from_var_list(field, &args.vars).map_err(usage)?;
        if args.e == 0 {
            return Err(usage(CartierError::ZeroExponent));
        }
        Ok(Setup { ring, args })
    }

    fn poly(&self, s: &str) -> Result<Polynomial, Failure> {
        self.ring.parse(s).map_err(|e| Failure::Usage(format!("{s:?}: {e}")))
    }

    fn ideal(&self, gens: &[String]) -> Result<Ideal, Failure> {
        let gens = gens.iter().map(|g| self.poly(g)).collect::<Result<Vec<_>, _>>()?;
        Ok(Ideal::new(&self.ring, gens))
    }

    fn phi(&self, u: &str) -> Result<CartierMap, Failure> {
        Ok(CartierMap::new(self.poly(u)?, self.args.e)?)
    }

    fn header(&self) -> serde_json::Map<String, serde_json::Value> {
        let mut m = serde_json::Map::new();
        m.insert("field".into(), json!(self.ring.field().spec().to_string()));
        m.insert("vars".into(), json!(self.ring.vars()));
        m
    }
}

fn write_json(out: &mut dyn Write, value: &impl Serialize) -> std::io::Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(value).unwrap())
}

/// Runs the command line `args` (including the program name) and returns
/// the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Internal(msg)) => {
            let _ = writeln!(err, "internal error: {msg}");
            EXIT_INTERNAL
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let io = |e: std::io::Error| Failure::Internal(e.to_string());
    match cmd {
        Command::EthRoot { ring, gens } => {
            let s = Setup::new(ring)?;
            let root = crate::cartier::eth_root(&s.ideal(&gens)?, s.args.e);
            if s.args.format == Format::Json {
                let mut m = s.header();
                m.insert("e".into(), json!(s.args.e));
                m.insert("ideal".into(), json!(root.canonical_strings()));
                write_json(out, &m).map_err(io)?;
            } else {
                writeln!(out, "{root}").map_err(io)?;
            }
        }
        Command::Hash { ring, u, gens } => {
            let s = Setup::new(ring)?;
            let phi = s.phi(&u)?;
            let res = phi.hash_with_stats(&s.ideal(&gens)?)?;
            if s.args.format == Format::Json {
                let mut m = s.header();
                m.insert("u".into(), json!(phi.u().to_string()));
                m.insert("e".into(), json!(s.args.e));
                m.insert("ideal".into(), json!(res.ideal.canonical_strings()));
                m.insert("iterations".into(), json!(res.iterations));
                write_json(out, &m).map_err(io)?;
            } else {
                writeln!(out, "{}", res.ideal).map_err(io)?;
            }
        }
        Command::CheckFixed { ring, u, gens } => {
            let s = Setup::new(ring)?;
            let phi = s.phi(&u)?;
            let j = s.ideal(&gens)?;
            let status = if phi.is_fixed(&j)? {
                "fixed"
            } else if phi.is_compatible(&j)? {
                "compatible"
            } else {
                "neither"
            };
            if s.args.format == Format::Json {
                let mut m = s.header();
                m.insert("u".into(), json!(phi.u().to_string()));
                m.insert("e".into(), json!(s.args.e));
                m.insert("ideal".into(), json!(j.canonical_strings()));
                m.insert("status".into(), json!(status));
                write_json(out, &m).map_err(io)?;
            } else {
                writeln!(out, "{status}").map_err(io)?;
            }
        }
        Command::Enumerate { ring, u, max_nodes, max_seconds, jobs, strategy, trace } => {
            let s = Setup::new(ring)?;
            let phi = s.phi(&u)?;
            let max_time = match max_seconds {
                Some(t) if t.is_finite() && t >= 0.0 => Some(Duration::from_secs_f64(t)),
                Some(t) => return Err(usage(format!("invalid time budget {t}"))),
                None => None,
            };
            let strategy = match strategy {
                StrategyArg::Auto => Strategy::Auto,
                StrategyArg::Nakayama => Strategy::Nakayama,
                StrategyArg::Slice => Strategy::SliceDescent,
            };
            let mut en = Enumerator::new(phi).limits(Limits { max_nodes, max_time }).jobs(jobs).strategy(strategy);
            let trace_buf = Arc::new(Mutex::new(Vec::new()));
            if trace {
                en = en.trace(Box::new(SharedBuf(trace_buf.clone())));
            }
            let result = en.run();
            err.write_all(&trace_buf.lock().unwrap()).map_err(io)?;
            let (set, code) = match result {
                Ok(set) => (set, EXIT_OK),
                Err(EnumerateError::LimitExceeded { reason, partial }) => {
                    writeln!(err, "warning: {reason}; output is incomplete").map_err(io)?;
                    (*partial, EXIT_LIMIT)
                }
                Err(e @ EnumerateError::Invariant(_)) => return Err(Failure::Internal(e.to_string())),
                Err(EnumerateError::Cartier(e)) => return Err(e.into()),
                Err(e) => return Err(usage(e)),
            };
            if s.args.format == Format::Json {
                write_json(out, &enumeration_json(&s, &set)).map_err(io)?;
            } else {
                write_enumeration_text(out, &set).map_err(io)?;
            }
            return Ok(code);
        }
    }
    Ok(EXIT_OK)
}

fn enumeration_json(s: &Setup, set: &FixedIdealSet) -> serde_json::Value {
    let mut m = s.header();
    m.insert("u".into(), json!(set.phi().u().to_string()));
    m.insert("e".into(), json!(s.args.e));
    let ideals: Vec<Vec<String>> = set.ideals().iter().map(|i| i.canonical_strings()).collect();
    m.insert("ideals".into(), json!(ideals));
    m.insert("count".into(), json!(set.len()));
    m.insert("stats".into(), serde_json::to_value(set.stats()).unwrap());
    m.insert("complete".into(), json!(set.is_complete()));
    serde_json::Value::Object(m)
}

fn write_enumeration_text(out: &mut dyn Write, set: &FixedIdealSet) -> std::io::Result<()> {
    for i in set.ideals() {
        let tag = if i.is_unit() {
            "  (unit ideal)"
        } else if i.is_zero() {
            "  (zero ideal)"
        } else {
            ""
        };
        writeln!(out, "{i}{tag}")?;
    }
    writeln!(out)?;
    let proper = set.proper_nonzero().count();
    writeln!(out, "{} fixed ideals: {} proper nonzero", set.len(), proper)?;
    for (k, n) in set.categories() {
        match k {
            Some(1) => writeln!(out, "  {n} with 1 minimal generator")?,
            Some(g) => writeln!(out, "  {n} with {g} minimal generators")?,
            None => writeln!(out, "  {n} not contained in the maximal ideal")?,
        }
    }
    let st = set.stats();
    writeln!(
        out,
        "search: {} nodes, {} hash calls, {} hash iterations, {} memo hits, depth {}, {} ms, {}",
        st.nodes, st.hash_calls, st.hash_iterations, st.memo_hits, st.max_depth, st.elapsed_ms, st.strategy
    )?;
    if !set.is_complete() {
        writeln!(out, "INCOMPLETE: limits were exceeded")?;
    }
    Ok(())
}

struct SharedBuf(Arc<Mutex<Vec<u8>>>);

impl Write for SharedBuf {
    fn write(&mut self, b: &[u8]) -> std::io::Result<usize> {
        self.0.lock().unwrap().extend_from_slice(b);
        Ok(b.len())
    }

    fn flush(&mut self) -> std::io::Result<()> {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("fpure").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn check_fixed_example() {
        let (code, out, _) = call(&["check-fixed", "--field", "2", "--vars", "x,y", "--u", "x*y", "--e", "1", "x"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "fixed");
        let (_, out, _) = call(&["check-fixed", "--field", "2", "--vars", "x,y", "--u", "x*y", "x^2*y", "x*y^2"]);
        assert_eq!(out.trim(), "neither");
    }

    #[test]
    fn eth_root_of_zero() {
        let (code, out, _) = call(&["eth-root", "--field", "2", "--vars", "x,y", "--e", "1", "0"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "<>");
        let (_, out, _) = call(&["eth-root", "--field", "2", "--vars", "x,y", "--format", "json", "x^3*y"]);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["ideal"], json!(["x"]));
    }

    #[test]
    fn hash_command() {
        let (code, out, _) = call(&["hash", "--field", "2", "--vars", "x,y", "--u", "x*y", "x", "y^2"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "<x>");
    }

    #[test]
    fn enumerate_json_schema() {
        let (code, out, _) = call(&["enumerate", "--field", "2", "--vars", "x,y", "--u", "x*y", "--e", "1", "--format", "json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["count"], 6);
        assert_eq!(v["complete"], true);
        assert_eq!(v["field"], "2");
        assert_eq!(v["vars"], json!(["x", "y"]));
        assert_eq!(v["u"], "x*y");
        assert_eq!(v["e"], 1);
        assert_eq!(v["ideals"].as_array().unwrap().len(), 6);
        assert!(v["stats"]["nodes"].is_u64());
    }

    #[test]
    fn enumerate_text_summary() {
        let (code, out, _) = call(&["enumerate", "--field", "2", "--vars", "x,y", "--u", "x*y"]);
        assert_eq!(code, 0);
        assert!(out.contains("<1>  (unit ideal)"));
        assert!(out.contains("6 fixed ideals: 4 proper nonzero"));
        assert!(out.contains("3 with 1 minimal generator"));
        assert!(out.contains("1 with 2 minimal generators"));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["hash", "--field", "6", "--vars", "x", "--u", "x"]).0, EXIT_USAGE);
        assert_eq!(call(&["hash", "--field", "2", "--vars", "x", "--u", "y"]).0, EXIT_USAGE);
        assert_eq!(call(&["hash", "--field", "2", "--vars", "x", "--u", "x", "--e", "0"]).0, EXIT_USAGE);
        assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
        let (code, out, err) = call(&["enumerate", "--field", "2", "--vars", "x,y", "--u", "x*y", "--max-nodes", "2", "--format", "json"]);
        assert_eq!(code, EXIT_LIMIT);
        assert!(err.contains("incomplete"));
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["complete"], false);
    }

    #[test]
    fn trace_goes_to_stderr() {
        let (code, _, err) = call(&["enumerate", "--field", "2", "--vars", "x,y", "--u", "x*y", "--trace"]);
        assert_eq!(code, 0);
        assert!(err.lines().all(|l| serde_json::from_str::<serde_json::Value>(l).is_ok()));
        assert!(err.contains("\"event\":\"hash\""));
    }
}
