//! Command-line front end.
//!
//! Exit codes: `0` success, `1` a verification failure, `2` bad usage, `3` an
//! unknown point name, `4` mismatched space and curve, `5` unsupported field.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use crate::chars::{all_orbits, CentralChar, Parity};
use crate::egcurve::{curve_for, EGCurve, EGPoint};
use crate::error::Error;
use crate::gf::{make_ctx, FieldCtx, FieldElement, GfError};
use crate::llc::{invariants_of, Checker};
use crate::lmap::{build_map, LMap};
use crate::satake::{build_space, SatakePoint, SatakeSpace};
use crate::suite::{parse_coeffs, run_suite, SuiteConfig, ZetaChoice};

#[derive(Debug, Parser)]
#[command(
    name = "modp-satake",
    version,
    about = "Mod-p Satake parameters and the Emerton-Gee chain for GL2(Qp)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Debug, Args)]
pub struct Opts {
    #[arg(long, global = true, default_value_t = 5)]
    pub p: u32,
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=4))]
    pub n: u32,
    /// `basic-even`, `basic-odd` or `c:<int>:<coeffs>`, e.g. `c:3:[1,2]`.
    #[arg(long, global = true, default_value = "basic-even")]
    pub zeta: String,
    /// Central character of the curve, when it should differ from `--zeta`.
    #[arg(long, global = true)]
    pub curve_zeta: Option<String>,
    #[arg(long, global = true)]
    pub point: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Output file (directory for `export`).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Sampled twists per parity in `verify`.
    #[arg(long, global = true, default_value_t = 20)]
    pub samples: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Swap orbits of torus characters, by restriction.
    Orbits,
    /// Components of the Satake space (or one named point).
    Satake,
    /// The Emerton-Gee chain.
    Curve,
    /// Pieces of `L_zeta` (or the image of a Satake point).
    Map,
    /// Fiber of `L_zeta` over a curve point.
    Fibers,
    /// `pi(rho)`, its invariants and block at a curve point.
    Llc,
    /// The full invariant suite.
    Verify,
    /// JSON and DOT artifacts written to `--out`.
    Export,
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::UnknownPoint(_) => 3,
        Error::ParityMismatch { .. } | Error::CentralCharMismatch => 4,
        Error::Field(GfError::UnsupportedPrime(_) | GfError::InvalidDegree) => 5,
        Error::Field(_) | Error::Usage(_) | Error::Io(_) => 2,
    }
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let stdout = std::io::stdout();
    match execute(&cli, &mut stdout.lock()) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

/// Runs a parsed command. `Ok(false)` means the command ran but a check failed.
pub fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<bool, Error> {
    let opts = &cli.opts;
    let (text, ok) = match cli.command {
        Command::Orbits => (cmd_orbits(opts)?, true),
        Command::Satake => (cmd_satake(opts)?, true),
        Command::Curve => (cmd_curve(opts)?, true),
        Command::Map => (cmd_map(opts)?, true),
        Command::Fibers => (cmd_fibers(opts)?, true),
        Command::Llc => (cmd_llc(opts)?, true),
        Command::Verify => cmd_verify(opts)?,
        Command::Export => return cmd_export(opts).map(|()| true),
    };
    match &opts.out {
        Some(path) => std::fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(ok)
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn unsupported(opts: &Opts, cmd: &str) -> Error {
    Error::Usage(format!("format {:?} not available for {cmd}", opts.format).to_lowercase())
}

struct Setup {
    ctx: FieldCtx,
    zeta: CentralChar,
    space: SatakeSpace,
    curve: EGCurve,
}

impl Setup {
    fn new(opts: &Opts) -> Result<Setup, Error> {
        let ctx = make_ctx(opts.p, opts.n as usize)?;
        let zeta = opts.zeta.parse::<ZetaChoice>()?.resolve(&ctx)?;
        let curve_zeta = match &opts.curve_zeta {
            Some(z) => z.parse::<ZetaChoice>()?.resolve(&ctx)?,
            None => zeta.clone(),
        };
        Ok(Setup {
            space: build_space(&ctx, &zeta),
            curve: curve_for(&ctx, &curve_zeta),
            ctx,
            zeta,
        })
    }

    fn map(&self) -> Result<LMap, Error> {
        build_map(&self.space, &self.curve)
    }

    fn point<'a>(&self, opts: &'a Opts) -> Result<&'a str, Error> {
        opts.point
            .as_deref()
            .ok_or_else(|| Error::Usage("--point is required".into()))
    }
}

fn parse_value(ctx: &FieldCtx, s: &str, name: &str) -> Result<FieldElement, Error> {
    let coeffs = parse_coeffs(s).ok_or_else(|| Error::UnknownPoint(name.to_string()))?;
    ctx.element_lenient(&coeffs)
        .map_err(|_| Error::UnknownPoint(name.to_string()))
}

/// A point in the `node-<k>`, `ext-left:z1=..`, `ext-right:t=..`, `int-<k>:x=..` grammar.
pub fn parse_curve_point(curve: &EGCurve, name: &str) -> Result<EGPoint, Error> {
    let unknown = || Error::UnknownPoint(name.to_string());
    let ctx = &curve.ctx;
    let pt = if let Some(k) = name.strip_prefix("node-") {
        EGPoint::Node {
            k: k.parse().map_err(|_| unknown())?,
        }
    } else {
        let (head, coord) = name.split_once(':').ok_or_else(unknown)?;
        let (var, value) = coord.split_once('=').ok_or_else(unknown)?;
        let last = curve.components.len() - 1;
        let row = match head {
            "ext-left" => 0,
            "ext-right" => last,
            _ => {
                let k: usize = head
                    .strip_prefix("int-")
                    .and_then(|k| k.parse().ok())
                    .ok_or_else(unknown)?;
                if k == 0 || k >= last {
                    return Err(unknown());
                }
                k
            }
        };
        if curve.components[row].coordinate != var {
            return Err(unknown());
        }
        EGPoint::Red {
            row,
            value: parse_value(ctx, value, name)?,
        }
    };
    if !curve.is_valid_point(ctx, &pt) {
        return Err(unknown());
    }
    Ok(pt)
}

/// A point in the `comp-<i>:(origin|x=..|y=..|z1=..)` grammar.
pub fn parse_satake_point(space: &SatakeSpace, name: &str) -> Result<SatakePoint, Error> {
    let unknown = || Error::UnknownPoint(name.to_string());
    let ctx = &space.ctx;
    let (head, coord) = name.split_once(':').ok_or_else(unknown)?;
    let i: usize = head
        .strip_prefix("comp-")
        .and_then(|i| i.parse().ok())
        .ok_or_else(unknown)?;
    let comp = space.components.get(i).ok_or_else(unknown)?;
    if coord == "origin" {
        return Ok(comp.origin(ctx));
    }
    let (var, value) = coord.split_once('=').ok_or_else(unknown)?;
    let value = parse_value(ctx, value, name)?;
    let regular = comp.ordering.is_some();
    match (var, regular) {
        ("x", true) => Ok(comp.point_x(ctx, &value)),
        ("y", true) => Ok(comp.point_y(ctx, &value)),
        ("z1", false) => Ok(comp.point_z1(ctx, &value)),
        _ => Err(unknown()),
    }
}

fn cmd_orbits(opts: &Opts) -> Result<String, Error> {
    make_ctx(opts.p, 1)?;
    let table = all_orbits(opts.p);
    let total: usize = table.iter().map(|(_, f)| f.len()).sum();
    match opts.format {
        Format::Json => {
            let fibers: Vec<Value> = table
                .iter()
                .map(|(e, f)| {
                    json!({
                        "restriction": e,
                        "count": f.len(),
                        "nonregular": f.iter().filter(|g| !g.regular).count(),
                        "orbits": f.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            Ok(to_json(
                &json!({ "p": opts.p, "total": total, "fibers": fibers }),
            ))
        }
        Format::Tsv => {
            let mut s = String::from("restriction\tcount\tnonregular\torbits\n");
            for (e, f) in &table {
                let names: Vec<String> = f.iter().map(|g| g.to_string()).collect();
                let nonreg = f.iter().filter(|g| !g.regular).count();
                s += &format!("{e}\t{}\t{nonreg}\t{}\n", f.len(), names.join(" "));
            }
            s += &format!("total\t{total}\n");
            Ok(s)
        }
        Format::Dot => Err(unsupported(opts, "orbits")),
    }
}

fn cmd_satake(opts: &Opts) -> Result<String, Error> {
    let setup = Setup::new(opts)?;
    let space = &setup.space;
    if let Some(name) = &opts.point {
        let v = parse_satake_point(space, name)?;
        return Ok(to_json(
            &json!({ "name": space.point_name(&v), "point": v }),
        ));
    }
    match opts.format {
        Format::Json => Ok(to_json(space)),
        Format::Tsv => {
            let mut s = String::from("index\torbit\tshape\tchain_index\tpoints\n");
            for c in &space.components {
                s += &format!(
                    "{}\t{}\t{:?}\t{}\t{}\n",
                    c.index,
                    c.gamma,
                    c.shape,
                    c.chain_index,
                    c.point_count(setup.ctx.order())
                )
                .to_lowercase();
            }
            Ok(s)
        }
        Format::Dot => Err(unsupported(opts, "satake")),
    }
}

fn cmd_curve(opts: &Opts) -> Result<String, Error> {
    let setup = Setup::new(opts)?;
    let curve = &setup.curve;
    match opts.format {
        Format::Json => Ok(to_json(curve)),
        Format::Dot => Ok(curve.to_dot()),
        Format::Tsv => {
            let mut s = String::from("row\tlabel\tcoordinate\tat_zero\tat_infinity\n");
            for c in &curve.components {
                let zero = c.at_zero.map_or("-".to_string(), |k| format!("node-{k}"));
                s += &format!(
                    "{}\t{} | {}\t{}\t{zero}\tnode-{}\n",
                    c.index, c.label[0], c.label[1], c.coordinate, c.at_infinity
                );
            }
            Ok(s)
        }
    }
}

fn cmd_map(opts: &Opts) -> Result<String, Error> {
    let setup = Setup::new(opts)?;
    let map = setup.map()?;
    if let Some(name) = &opts.point {
        let v = parse_satake_point(&setup.space, name)?;
        let x = map.eval(&v);
        return Ok(to_json(&json!({
            "source": setup.space.point_name(&v),
            "image": map.curve.point_name(&x),
            "point": x,
        })));
    }
    match opts.format {
        Format::Json => Ok(to_json(&map.pieces)),
        Format::Tsv => {
            let mut s = String::from("component\tline\ttarget_row\tformula\n");
            for d in &map.pieces {
                for piece in &d.pieces {
                    let formula = serde_json::to_value(piece.formula).expect("serializable");
                    s += &format!(
                        "comp-{}\t{:?}\t{}\t{}\n",
                        d.component,
                        piece.line,
                        piece.target_row,
                        formula.as_str().unwrap_or_default()
                    );
                }
            }
            Ok(s)
        }
        Format::Dot => Err(unsupported(opts, "map")),
    }
}

fn cmd_fibers(opts: &Opts) -> Result<String, Error> {
    let setup = Setup::new(opts)?;
    let map = setup.map()?;
    let name = setup.point(opts)?;
    let x = parse_curve_point(&map.curve, name)?;
    let fib = map.fiber(&x);
    let over = setup.space.over(&fib.ctx);
    let points: Vec<Value> = fib
        .points
        .iter()
        .map(|fp| {
            json!({
                "name": over.point_name(&fp.point),
                "multiplicity": fp.multiplicity,
                "point": fp.point,
            })
        })
        .collect();
    match opts.format {
        Format::Json => Ok(to_json(&json!({
            "point": map.curve.point_name(&x),
            "cardinality": fib.cardinality(),
            "ramified": fib.ramified,
            "extension": fib.extension,
            "fiber": points,
        }))),
        Format::Tsv => {
            let mut s = String::from("name\tmultiplicity\n");
            for p in &points {
                s += &format!(
                    "{}\t{}\n",
                    p["name"].as_str().unwrap_or_default(),
                    p["multiplicity"]
                );
            }
            Ok(s)
        }
        Format::Dot => Err(unsupported(opts, "fibers")),
    }
}

fn cmd_llc(opts: &Opts) -> Result<String, Error> {
    let setup = Setup::new(opts)?;
    let map = setup.map()?;
    let name = setup.point(opts)?;
    let x = parse_curve_point(&map.curve, name)?;
    let ch = Checker::new(&map);
    let (rho, _) = ch
        .ext
        .curve
        .rep_of_point(&ch.e, &x.embed(&ch.e, &map.curve.ctx));
    let block = ch.block_of(&x);
    let pi: Vec<Value> = ch
        .pi_at(&x)
        .iter()
        .map(|c| {
            json!({
                "constituent": c.to_string(),
                "invariants": invariants_of(&ch.e, c).to_string(),
            })
        })
        .collect();
    let report = ch.verify_theorem(&x);
    match opts.format {
        Format::Json => Ok(to_json(&json!({
            "point": report.point,
            "case": report.case,
            "rho": rho.to_string(),
            "pi": pi,
            "block_type": block.block_type,
            "lhs": report.lhs.to_string(),
            "rhs": report.rhs.to_string(),
            "pass": report.pass,
        }))),
        Format::Tsv => {
            let mut s = format!("rho\t{rho}\n");
            for p in &pi {
                s += &format!(
                    "pi\t{}\t{}\n",
                    p["constituent"].as_str().unwrap_or_default(),
                    p["invariants"].as_str().unwrap_or_default()
                );
            }
            s += &format!("block_type\t{}\npass\t{}\n", block.block_type, report.pass);
            Ok(s)
        }
        Format::Dot => Err(unsupported(opts, "llc")),
    }
}

fn cmd_verify(opts: &Opts) -> Result<(String, bool), Error> {
    if opts.curve_zeta.is_some() {
        Setup::new(opts)?.map()?;
    }
    let cfg = SuiteConfig {
        p: opts.p,
        n: opts.n as usize,
        zeta: opts.zeta.parse()?,
        seed: opts.seed,
        samples: opts.samples,
    };
    let report = run_suite(&cfg)?;
    let text = match opts.format {
        Format::Json => to_json(&report),
        Format::Tsv => {
            let mut s = String::from("check\tpass\tfailures\n");
            for c in &report.checks {
                s += &format!("{}\t{}\t{}\n", c.name, c.pass, c.failures.len());
            }
            s
        }
        Format::Dot => return Err(unsupported(opts, "verify")),
    };
    Ok((text, report.pass))
}

fn cmd_export(opts: &Opts) -> Result<(), Error> {
    let dir = opts
        .out
        .as_ref()
        .ok_or_else(|| Error::Usage("export needs --out <dir>".into()))?;
    let setup = Setup::new(opts)?;
    let map = setup.map()?;
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join("satake.json"), to_json(&setup.space))?;
    std::fs::write(dir.join("curve.json"), to_json(&setup.curve))?;
    std::fs::write(dir.join("curve.dot"), setup.curve.to_dot())?;
    std::fs::write(dir.join("map.json"), to_json(&map.pieces))?;
    let parity = Parity::of_exponent(setup.zeta.c);
    std::fs::write(
        dir.join("config.json"),
        to_json(&json!({ "p": opts.p, "n": opts.n, "zeta": opts.zeta, "parity": parity })),
    )?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (Result<bool, Error>, String) {
        let cli = Cli::try_parse_from(std::iter::once("modp-satake").chain(args.iter().copied()))
            .unwrap();
        let mut buf = Vec::new();
        let res = execute(&cli, &mut buf);
        (res, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn curve_point_grammar_round_trips() {
        for p in [5u32, 7] {
            let ctx = make_ctx(p, 2).unwrap();
            for parity in [Parity::Even, Parity::Odd] {
                let curve = crate::egcurve::build_curve(&ctx, parity);
                for x in curve.enumerate_points(&ctx) {
                    let name = curve.point_name(&x);
                    assert_eq!(parse_curve_point(&curve, &name).unwrap(), x, "{name}");
                }
            }
        }
    }

    #[test]
    fn satake_point_grammar_round_trips() {
        let ctx = make_ctx(5, 2).unwrap();
        for parity in [Parity::Even, Parity::Odd] {
            let space = build_space(&ctx, &parity.basic_zeta(&ctx));
            for v in space.enumerate_points() {
                let name = space.point_name(&v);
                let back = parse_satake_point(&space, &name).unwrap();
                assert!(back.same_as(&v), "{name}");
            }
        }
    }

    #[test]
    fn bad_names_are_unknown_points() {
        let curve = crate::egcurve::build_curve(&make_ctx(5, 1).unwrap(), Parity::Odd);
        for name in [
            "node-0",
            "node-3",
            "ext-left:z1=1",
            "int-0:x=1",
            "int-1:x=0",
            "mid:x=1",
            "ext-left:t=[1,2]",
        ] {
            assert!(
                matches!(parse_curve_point(&curve, name), Err(Error::UnknownPoint(_))),
                "{name}"
            );
        }
    }

    #[test]
    fn orbits_total_for_seven() {
        let (res, out) = run_capture(&["orbits", "--p", "7", "--format", "tsv"]);
        assert!(res.unwrap());
        assert!(out.ends_with("total\t21\n"));
    }

    #[test]
    fn odd_ramified_fiber() {
        let (res, out) = run_capture(&["fibers", "--zeta", "basic-odd", "--point", "ext-left:t=2"]);
        assert!(res.unwrap());
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["cardinality"], 1);
        assert_eq!(v["ramified"], true);
        assert_eq!(v["fiber"][0]["multiplicity"], 2);
    }

    #[test]
    fn error_codes() {
        let code = |args: &[&str]| exit_code(&run_capture(args).0.unwrap_err());
        assert_eq!(code(&["fibers", "--point", "node-9"]), 3);
        assert_eq!(code(&["map", "--curve-zeta", "basic-odd"]), 4);
        assert_eq!(code(&["curve", "--p", "9"]), 5);
        assert_eq!(code(&["orbits", "--format", "dot"]), 2);
        assert_eq!(code(&["fibers"]), 2);
        assert_eq!(run(["modp-satake", "orbits", "--n", "7"]), 2);
    }
}
