use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use tame_core::branch::{BranchDescriptor, BranchSeries};
use tame_core::config::{CliConfig, OutputFormat};
use tame_core::graded_det::{c3_reduce, comm1d, LatticeSpec};
use tame_core::parse::{
    parse_bivariate, parse_field_elem, parse_field_spec, parse_poly, parse_rational_fn,
    parse_series1, parse_series2,
};
use tame_core::reciprocity::{
    parshin_curve_verify, parshin_point_verify, weil_verify, LineParam, SurfacePoint,
    VerificationReport,
};
use tame_core::report::ReportJson;
use tame_core::symbols::{nu_k, tame1d, tame2d};
use tame_core::{Error, Field};

const EXIT_PARSE: u8 = 2;
const EXIT_ARITH: u8 = 3;
const EXIT_FAIL: u8 = 4;
const EXIT_SINGULAR: u8 = 5;

#[derive(Parser)]
#[command(
    name = "tame",
    version,
    about = "Tame symbols and reciprocity laws over finite fields"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    /// Base field: Fp, Fp^d:modulus (generator `a`, modulus in T) or Q.
    #[arg(long, global = true)]
    field: Option<String>,
    /// Working precision for series expansions.
    #[arg(long, global = true)]
    precision: Option<i64>,
    /// Largest precision tried when doubling.
    #[arg(long, global = true)]
    retry_cap: Option<i64>,
    /// Seed for randomized factorization.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// text or json.
    #[arg(long, global = true)]
    output: Option<String>,
    /// key=value configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Tame symbol {f, g} of two Laurent series in t.
    Symbol1d {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    /// Tame symbol {f, g, h} of three Laurent series in t, s.
    Symbol2d {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
        #[arg(allow_hyphen_values = true)]
        h: String,
    },
    /// The valuation pairing nu_K(f, g) of two Laurent series in t, s.
    Nuk {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    /// Commutator of f and g on the determinant line, against the tame symbol.
    Comm1d {
        #[arg(long, default_value_t = 16)]
        depth: i64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        lattice_shift: i64,
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    /// The three-argument pairing of series in t, s, against the norm of the tame symbol.
    C3 {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
        #[arg(allow_hyphen_values = true)]
        h: String,
    },
    /// Weil reciprocity for two rational functions in T.
    Weil {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    /// Parshin's law at a point of the plane for rational functions in u, v.
    ParshinPoint {
        /// The point as `u0,v0`.
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        /// Explicit branch `x(t);y(t)` through the point, repeatable.
        #[arg(long, allow_hyphen_values = true)]
        branch: Vec<String>,
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
        #[arg(allow_hyphen_values = true)]
        h: String,
    },
    /// Parshin's law along a line of the plane for rational functions in u, v.
    ParshinCurve {
        /// The line as `u(T),v(T)` with both coordinates of degree at most 1.
        #[arg(long, default_value = "T,0", allow_hyphen_values = true)]
        curve: String,
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
        #[arg(allow_hyphen_values = true)]
        h: String,
    },
}

/// A failed run: exit code and message for stderr.
struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::Config(_) | Error::InvalidField(_) => EXIT_PARSE,
            Error::SingularBranchUnhandled(_) => EXIT_SINGULAR,
            _ => EXIT_ARITH,
        };
        Failure(code, format!("{}: {e}", e.name()))
    }
}

/// Everything a command prints, and whether it counts as a failed check.
struct Output {
    text: String,
    ok: bool,
}

fn load_config(c: &Common) -> Result<CliConfig, Failure> {
    let mut cfg = CliConfig::default();
    if let Some(path) = &c.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure(EXIT_PARSE, format!("Config: {}: {e}", path.display())))?;
        cfg.apply_file(&text)?;
    }
    cfg.apply_env(|k| std::env::var(k).ok())?;
    if let Some(f) = &c.field {
        cfg.field = Some(f.clone());
    }
    if let Some(p) = c.precision {
        cfg.precision = p;
    }
    if let Some(r) = c.retry_cap {
        cfg.retry_cap = r;
    }
    if let Some(s) = c.seed {
        cfg.seed = s;
    }
    if let Some(o) = &c.output {
        cfg.output = o.parse()?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn field_of(cfg: &CliConfig) -> Result<Field, Failure> {
    let spec = cfg
        .field
        .as_deref()
        .ok_or_else(|| Failure(EXIT_PARSE, "Config: no field given (use --field)".into()))?;
    Ok(parse_field_spec(spec)?)
}

fn render_value(cfg: &CliConfig, pairs: &[(&str, String)]) -> String {
    match cfg.output {
        OutputFormat::Text => {
            let mut s = String::new();
            for (k, v) in pairs {
                let _ = writeln!(s, "{k}: {v}");
            }
            s
        }
        OutputFormat::Json => {
            let mut m = serde_json::Map::new();
            for (k, v) in pairs {
                m.insert(k.to_string(), json!(v));
            }
            serde_json::to_string_pretty(&m).expect("serializes") + "\n"
        }
    }
}

fn render_report(cfg: &CliConfig, r: &VerificationReport) -> String {
    let j = ReportJson::from(r);
    if cfg.output == OutputFormat::Json {
        return j.to_json() + "\n";
    }
    let w0 = j
        .entries
        .iter()
        .map(|e| e.place.len())
        .chain([5])
        .max()
        .unwrap();
    let w1 = j
        .entries
        .iter()
        .map(|e| e.symbol.len())
        .chain([6])
        .max()
        .unwrap();
    let mut s = String::new();
    let _ = writeln!(
        s,
        "law: {}  field: {}  precision: {}",
        j.law, j.field, j.precision
    );
    let _ = writeln!(s, "{:w0$}  {:w1$}  norm", "place", "symbol");
    for e in &j.entries {
        let _ = writeln!(s, "{:w0$}  {:w1$}  {}", e.place, e.symbol, e.norm);
    }
    let _ = writeln!(s, "rows: {}", j.entries.len());
    let _ = writeln!(s, "product: {}", j.product);
    let _ = writeln!(s, "{}", if j.passed { "PASS" } else { "FAIL" });
    s
}

fn verdict(agree: bool) -> String {
    if agree { "AGREE" } else { "DISAGREE" }.to_string()
}

fn parse_point(k: &Field, at: &str) -> Result<SurfacePoint, Failure> {
    let (u, v) = at
        .split_once(',')
        .ok_or_else(|| Error::parse(0, "point must be u0,v0"))?;
    Ok(SurfacePoint::affine(
        k,
        parse_field_elem(k, u)?,
        parse_field_elem(k, v)?,
    ))
}

fn parse_branch(k: &Field, text: &str) -> Result<BranchDescriptor, Failure> {
    let (x, y) = text
        .split_once(';')
        .ok_or_else(|| Error::parse(0, "branch must be x(t);y(t)"))?;
    let x = parse_poly(k, "t", x)?;
    let y = parse_poly(k, "t", y)?;
    let center = (x.coeff(0), y.coeff(0));
    Ok(BranchDescriptor::explicit(
        k,
        center,
        BranchSeries::Exact(x),
        BranchSeries::Exact(y),
        None,
    ))
}

fn parse_line(k: &Field, text: &str) -> Result<LineParam, Failure> {
    let (u, v) = text
        .split_once(',')
        .ok_or_else(|| Error::parse(0, "curve must be u(T),v(T)"))?;
    let coords = |s: &str| -> Result<_, Failure> {
        let p = parse_poly(k, "T", s)?;
        if p.degree().unwrap_or(0) > 1 {
            return Err(Error::parse(0, "only lines are supported").into());
        }
        Ok((p.coeff(0), p.coeff(1)))
    };
    Ok(LineParam::new(k, coords(u)?, coords(v)?)?)
}

fn run(cli: Cli) -> Result<Output, Failure> {
    let cfg = load_config(&cli.common)?;
    let k = field_of(&cfg)?;
    let policy = cfg.retry_policy();
    let ok = |text| Ok(Output { text, ok: true });
    match cli.cmd {
        Cmd::Symbol1d { f, g } => {
            let (v, _) =
                policy.run(|p| tame1d(&parse_series1(&k, &f, p)?, &parse_series1(&k, &g, p)?))?;
            ok(render_value(
                &cfg,
                &[("symbol", v.to_string()), ("norm", v.norm().to_string())],
            ))
        }
        Cmd::Symbol2d { f, g, h } => {
            let (v, _) = policy.run(|p| {
                tame2d(
                    &parse_series2(&k, &f, p)?,
                    &parse_series2(&k, &g, p)?,
                    &parse_series2(&k, &h, p)?,
                )
            })?;
            ok(render_value(
                &cfg,
                &[("symbol", v.to_string()), ("norm", v.norm().to_string())],
            ))
        }
        Cmd::Nuk { f, g } => {
            let (n, _) =
                policy.run(|p| nu_k(&parse_series2(&k, &f, p)?, &parse_series2(&k, &g, p)?))?;
            ok(render_value(&cfg, &[("nu_K", n.to_string())]))
        }
        Cmd::Comm1d {
            depth,
            lattice_shift,
            f,
            g,
        } => {
            let lat = LatticeSpec::standard(&k, lattice_shift);
            let window = depth - lattice_shift + 8;
            let (r, _) = policy.run(|p| {
                let p = p.max(window);
                let fs = parse_series1(&k, &f, p)?;
                let gs = parse_series1(&k, &g, p)?;
                let c = comm1d(&fs, &gs, &lat, depth)?;
                let oracle = tame1d(&fs, &gs)?.norm().inv()?;
                Ok((c, oracle))
            })?;
            let (c, oracle) = r;
            let agree = c.value == oracle;
            Ok(Output {
                text: render_value(
                    &cfg,
                    &[
                        ("comm1d", c.value.to_string()),
                        ("oracle", oracle.to_string()),
                        ("verdict", verdict(agree)),
                    ],
                ),
                ok: agree,
            })
        }
        Cmd::C3 { f, g, h } => {
            let ((c, oracle), _) = policy.run(|p| {
                let fs = parse_series2(&k, &f, p)?;
                let gs = parse_series2(&k, &g, p)?;
                let hs = parse_series2(&k, &h, p)?;
                Ok((c3_reduce(&fs, &gs, &hs)?, tame2d(&fs, &gs, &hs)?.norm()))
            })?;
            let agree = c == oracle;
            Ok(Output {
                text: render_value(
                    &cfg,
                    &[
                        ("c3", c.to_string()),
                        ("oracle", oracle.to_string()),
                        ("verdict", verdict(agree)),
                    ],
                ),
                ok: agree,
            })
        }
        Cmd::Weil { f, g } => {
            let r = weil_verify(
                &parse_rational_fn(&k, &f)?,
                &parse_rational_fn(&k, &g)?,
                cfg.seed,
            )?;
            Ok(Output {
                text: render_report(&cfg, &r),
                ok: r.passed,
            })
        }
        Cmd::ParshinPoint {
            at,
            branch,
            f,
            g,
            h,
        } => {
            let x = parse_point(&k, &at)?;
            let extra = branch
                .iter()
                .map(|b| parse_branch(&k, b))
                .collect::<Result<Vec<_>, _>>()?;
            let r = parshin_point_verify(
                &parse_bivariate(&k, &f)?,
                &parse_bivariate(&k, &g)?,
                &parse_bivariate(&k, &h)?,
                &x,
                &extra,
                policy,
            )?;
            Ok(Output {
                text: render_report(&cfg, &r),
                ok: r.passed,
            })
        }
        Cmd::ParshinCurve { curve, f, g, h } => {
            let line = parse_line(&k, &curve)?;
            let r = parshin_curve_verify(
                &parse_bivariate(&k, &f)?,
                &parse_bivariate(&k, &g)?,
                &parse_bivariate(&k, &h)?,
                &line,
                cfg.seed,
                policy,
            )?;
            Ok(Output {
                text: render_report(&cfg, &r),
                ok: r.passed,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{}", out.text);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAIL)
            }
        }
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
