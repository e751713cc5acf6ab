use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use drinfeld::algebra::{APoly, ExtCtx, FElem, Fq, FqCtx, Rat, Ring};
use drinfeld::carlitz;
use drinfeld::classaction::{self, BiPoly, IdealRep, MumfordDivisor};
use drinfeld::dnsfactor;
use drinfeld::drinfeld::DrinfeldModule;
use drinfeld::error::Error;
use drinfeld::hom::{self, Morphism};
use drinfeld::lrc::{self, LrcConfig, Message};
use drinfeld::lseries;
use drinfeld::motive::{self, CharPoly};
use drinfeld::ore::OrePoly;
use drinfeld::text;

const SCHEMA: &str = "drinfeld-cli/1";
const DEFAULT_SEED: u64 = 0;

#[derive(Parser)]
#[command(name = "drinfeld", version, about = "Exact computations with Drinfeld modules over Fq[T]")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for every random choice.
    #[arg(long, global = true, env = "DRINFELD_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct ModuleArgs {
    /// Ambient field F: `p^k[:modulus]` or `ext:d[:modulus]` with --base.
    #[arg(long)]
    field: String,
    /// Base field Fq for `ext:` fields.
    #[arg(long)]
    base: Option<String>,
    /// `γ;g_1;…;g_r` with elements written in z.
    #[arg(long, allow_hyphen_values = true)]
    module: String,
}

#[derive(Args)]
struct KModuleArgs {
    /// Fq as `p` or `p^k[:modulus]`.
    #[arg(long)]
    field: String,
    /// `g_1;…;g_r`, each a comma-separated polynomial in T; γ(T) = T.
    /// Defaults to the Carlitz module.
    #[arg(long)]
    module: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Characteristic polynomial of the Frobenius or of an endomorphism.
    Charpoly {
        #[command(flatten)]
        m: ModuleArgs,
        /// `frobenius` or an Ore polynomial (comma-separated, ascending in τ).
        #[arg(long, default_value = "frobenius")]
        endo: String,
    },
    /// A-basis of Hom(φ, ψ).
    Hom {
        #[command(flatten)]
        m: ModuleArgs,
        /// ψ; defaults to φ.
        #[arg(long)]
        codomain: Option<String>,
        /// Also print the Frobenius endomorphism τ^d of φ and its charpoly.
        #[arg(long)]
        frobenius: bool,
    },
    /// Norm and dual of the isogeny u with domain φ.
    NormDual {
        #[command(flatten)]
        m: ModuleArgs,
        /// u as an Ore polynomial.
        #[arg(long)]
        ore: String,
    },
    /// Action of an ideal of A[π] on a rank-2 module.
    Action {
        #[command(flatten)]
        m: ModuleArgs,
        /// Mumford divisor `u;v` with u, v comma-separated polynomials.
        #[arg(long, conflicts_with = "ideal")]
        divisor: Option<String>,
        /// Generators separated by `|`; each lists its X-coefficients
        /// ascending, separated by `;`, each a polynomial in T.
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Carlitz zeta value ζ_C(s) modulo T^{-prec}.
    Zeta {
        #[arg(long)]
        field: String,
        #[arg(long)]
        s: u64,
        #[arg(long)]
        prec: i64,
        /// Use the Euler product instead of the direct sum.
        #[arg(long)]
        euler: bool,
    },
    /// L(φ; X, s) mod X^n, or L(φ; 1, s) mod T^{-N} with --at-one.
    Lseries {
        #[command(flatten)]
        m: KModuleArgs,
        #[arg(long, default_value_t = 0)]
        s: u64,
        /// X-adic precision n.
        #[arg(long, default_value_t = 4)]
        prec: usize,
        #[arg(long)]
        at_one: bool,
        #[arg(long, default_value_t = 20)]
        laurent_prec: i64,
    },
    /// Exponential and logarithm coefficients.
    ExpLog {
        #[command(flatten)]
        m: KModuleArgs,
        /// Precision in z: keeps the terms z^{q^n} with q^n < prec.
        #[arg(long)]
        prec: u64,
    },
    /// Factorization over Fq.
    Factor {
        #[arg(long)]
        field: String,
        /// Comma-separated ascending coefficients, or `-` for stdin.
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, value_enum, default_value_t = Method::Dns)]
        method: Method,
    },
    /// Rank-metric locally recoverable codes.
    Lrc {
        #[command(subcommand)]
        action: LrcCommand,
    },
    /// Invariants of a module.
    Invariants {
        #[command(flatten)]
        m: ModuleArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Dns,
    Cz,
}

#[derive(Subcommand)]
enum LrcCommand {
    /// Builds a config; prints it as JSON.
    Setup {
        #[arg(long)]
        field: String,
        #[arg(long)]
        base: Option<String>,
        /// φ as `γ;g_1;…;g_r`; omit to search with --rank.
        #[arg(long)]
        module: Option<String>,
        #[arg(long)]
        rank: Option<usize>,
        /// Evaluation points, comma-separated.
        #[arg(long)]
        a: String,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        delta: usize,
        #[arg(long)]
        s: usize,
        #[arg(long, default_value_t = 100_000)]
        tries: usize,
    },
    /// Code length, dimension, minimum rank distance and locality.
    Params {
        /// Config JSON file from `lrc setup`.
        #[arg(long)]
        config: String,
        /// Also compute the minimum rank distance exhaustively.
        #[arg(long)]
        bruteforce: bool,
    },
    /// Encodes a message; prints the codeword.
    Encode {
        #[arg(long)]
        config: String,
        /// f_0;…;f_s, each an Ore polynomial; random when omitted.
        #[arg(long)]
        message: Option<String>,
    },
    /// Fills erasures within one locality group.
    Recover {
        #[arg(long)]
        config: String,
        /// Codeword entries separated by `;`, `?` for an erasure.
        #[arg(long)]
        word: String,
    },
}

enum Fail {
    Usage(String),
    Domain(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::InvalidField(_) => Fail::Usage(e.to_string()),
            e => Fail::Domain(e.to_string()),
        }
    }
}

struct Output {
    text: String,
    json: Value,
}

type Res = Result<Output, Fail>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let name = command_name(&cli.command);
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Text => println!("{}", out.text),
                Format::Json => {
                    let v = json!({ "schema": SCHEMA, "command": name, "seed": cli.seed, "result": out.json });
                    println!("{}", serde_json::to_string_pretty(&v).unwrap());
                }
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            let (code, kind, msg) = match f {
                Fail::Usage(m) => (2, "usage", m),
                Fail::Domain(m) => (1, "domain", m),
            };
            if cli.format == Format::Json {
                let v = json!({ "schema": SCHEMA, "command": name, "error": { "kind": kind, "message": msg } });
                println!("{}", serde_json::to_string_pretty(&v).unwrap());
            }
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Charpoly { .. } => "charpoly",
        Command::Hom { .. } => "hom",
        Command::NormDual { .. } => "norm-dual",
        Command::Action { .. } => "action",
        Command::Zeta { .. } => "zeta",
        Command::Lseries { .. } => "lseries",
        Command::ExpLog { .. } => "exp-log",
        Command::Factor { .. } => "factor",
        Command::Lrc { .. } => "lrc",
        Command::Invariants { .. } => "invariants",
    }
}

fn run(cli: &Cli) -> Res {
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    match &cli.command {
        Command::Charpoly { m, endo } => charpoly(m, endo),
        Command::Hom { m, codomain, frobenius } => hom_cmd(m, codomain.as_deref(), *frobenius),
        Command::NormDual { m, ore } => norm_dual(m, ore),
        Command::Action { m, divisor, ideal } => action(m, divisor.as_deref(), ideal.as_deref()),
        Command::Zeta { field, s, prec, euler } => zeta(field, *s, *prec, *euler),
        Command::Lseries { m, s, prec, at_one, laurent_prec } => lseries_cmd(m, *s, *prec, *at_one, *laurent_prec),
        Command::ExpLog { m, prec } => exp_log(m, *prec),
        Command::Factor { field, poly, method } => factor(field, poly, *method, cli.seed),
        Command::Lrc { action } => lrc_cmd(action, &mut rng),
        Command::Invariants { m } => invariants(m, &mut rng),
    }
}

fn field_of(field: &str, base: Option<&str>) -> Result<&'static ExtCtx, Fail> {
    let b = base.map(text::parse_base).transpose()?;
    Ok(text::parse_field(field, b)?)
}

fn module_of(m: &ModuleArgs) -> Result<DrinfeldModule<FElem>, Fail> {
    let f = field_of(&m.field, m.base.as_deref())?;
    Ok(text::parse_module(&m.module, f)?)
}

fn module_json(phi: &DrinfeldModule<FElem>) -> Value {
    json!({
        "field": text::render_field(phi.field()),
        "base": text::render_base(phi.field().base),
        "coeffs": phi.coeffs().iter().map(text::render_felem).collect::<Vec<_>>(),
    })
}

fn apoly_json(p: &APoly) -> Value {
    json!(p.coeffs_u32())
}

fn charpoly_json(chi: &CharPoly) -> Value {
    json!({ "text": chi.to_string(), "coeffs": chi.coeffs.iter().map(apoly_json).collect::<Vec<_>>() })
}

fn charpoly(m: &ModuleArgs, endo: &str) -> Res {
    let phi = module_of(m)?;
    let chi = if endo == "frobenius" {
        motive::frobenius_charpoly(&phi)
    } else {
        let u = text::parse_ore(endo, phi.field())?;
        let mor = Morphism::new(phi.clone(), phi.clone(), u)?;
        motive::charpoly_endo(&mor)?
    };
    Ok(Output { text: chi.to_string(), json: charpoly_json(&chi) })
}

fn hom_cmd(m: &ModuleArgs, codomain: Option<&str>, frobenius: bool) -> Res {
    let phi = module_of(m)?;
    let psi = match codomain {
        Some(c) => text::parse_module(c, phi.field())?,
        None => phi.clone(),
    };
    let basis = hom::hom_basis(&phi, &psi);
    let mut lines = vec![format!("codomain: {}", text::render_module(&psi)), format!("rank: {}", basis.len())];
    lines.extend(basis.iter().map(|u| text::render_ore(&u.ore)));
    let mut j = json!({
        "codomain": module_json(&psi),
        "rank": basis.len(),
        "basis": basis.iter().map(|u| text::render_ore(&u.ore)).collect::<Vec<_>>(),
    });
    if frobenius {
        let pi = Morphism::frobenius(&phi);
        let chi = motive::frobenius_charpoly(&phi);
        lines.push(format!("frobenius: {}", text::render_ore(&pi.ore)));
        lines.push(format!("frobenius charpoly: {chi}"));
        j["frobenius"] = json!({ "ore": text::render_ore(&pi.ore), "charpoly": charpoly_json(&chi) });
    }
    Ok(Output { text: lines.join("\n"), json: j })
}

fn norm_dual(m: &ModuleArgs, ore: &str) -> Res {
    let phi = module_of(m)?;
    let u = Morphism::from_ore(&phi, text::parse_ore(ore, phi.field())?)?;
    let n = motive::norm_isogeny(&u)?;
    let dual = motive::dual_isogeny(&u)?;
    let text_out = [
        format!("codomain: {}", text::render_module(&u.codomain)),
        format!("norm: {}", text::render_apoly(&n, "T")),
        format!("dual: {}", text::render_ore(&dual.ore)),
    ]
    .join("\n");
    Ok(Output {
        text: text_out,
        json: json!({ "codomain": module_json(&u.codomain), "norm": apoly_json(&n), "dual": text::render_ore(&dual.ore) }),
    })
}

fn bipoly(s: &str, fq: &'static FqCtx) -> Result<BiPoly, Fail> {
    let c = s.split(';').map(|t| text::parse_apoly(t, fq)).collect::<Result<Vec<_>, _>>()?;
    Ok(BiPoly::new(fq, c))
}

fn action(m: &ModuleArgs, divisor: Option<&str>, ideal: Option<&str>) -> Res {
    let phi = module_of(m)?;
    let fq = phi.field().base;
    let setup = classaction::action_setup_check(&phi);
    let psi = match (divisor, ideal) {
        (Some(d), _) => {
            let (u, v) = d.split_once(';').ok_or_else(|| Fail::Usage("divisor must be `u;v`".into()))?;
            let dv = MumfordDivisor::new(text::parse_apoly(u, fq)?, text::parse_apoly(v, fq)?, &setup)?;
            classaction::mumford_action(&dv, &phi)?
        }
        (None, Some(i)) => {
            let gens = i.split('|').map(|g| bipoly(g, fq)).collect::<Result<Vec<_>, _>>()?;
            classaction::ideal_action(&IdealRep::new(gens)?, &phi)?
        }
        (None, None) => return Err(Fail::Usage("give --divisor or --ideal".into())),
    };
    let violations: Vec<String> = setup.violations.iter().map(|v| v.to_string()).collect();
    let mut lines = vec![text::render_module(&psi)];
    if !violations.is_empty() {
        lines.push(format!("warning: setup hypotheses fail: {}", violations.join("; ")));
    }
    Ok(Output { text: lines.join("\n"), json: json!({ "module": module_json(&psi), "violations": violations }) })
}

fn zeta(field: &str, s: u64, prec: i64, euler: bool) -> Res {
    let fq = text::parse_base(field)?;
    let z = if euler { carlitz::carlitz_zeta_euler(fq, s, prec)? } else { carlitz::carlitz_zeta(fq, s, prec)? };
    Ok(Output { text: z.to_string(), json: json!({ "value": z.to_string(), "prec": prec }) })
}

fn k_module(m: &KModuleArgs) -> Result<DrinfeldModule<Rat>, Fail> {
    let fq = text::parse_base(&m.field)?;
    match &m.module {
        None => Ok(carlitz::carlitz_module(fq)),
        Some(s) => {
            let mut c = vec![Rat::t(fq)];
            for g in s.split(';') {
                c.push(Rat::from_poly(text::parse_apoly(g, fq)?));
            }
            Ok(DrinfeldModule::new(c)?)
        }
    }
}

fn lseries_cmd(m: &KModuleArgs, s: u64, prec: usize, at_one: bool, laurent_prec: i64) -> Res {
    let phi = k_module(m)?;
    let render = |p: &[APoly]| p.iter().map(|x| text::render_apoly(x, "T")).collect::<Vec<_>>();
    if at_one {
        let v = lseries::lseries_value(&phi, s, laurent_prec)?;
        let mut lines = vec![v.value.to_string()];
        if !v.skipped.is_empty() {
            lines.push(format!("skipped bad places: {}", render(&v.skipped).join(", ")));
        }
        return Ok(Output {
            text: lines.join("\n"),
            json: json!({ "value": v.value.to_string(), "max_degree": v.max_degree, "skipped": render(&v.skipped) }),
        });
    }
    let l = lseries::lseries_truncated(&phi, prec, s)?;
    let coeffs: Vec<String> = l.coeffs.iter().map(|c| text::render_rat(c, "T")).collect();
    let mut terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| c.as_str() != "0")
        .map(|(k, c)| match k {
            0 => c.clone(),
            1 => format!("({c})*X"),
            _ => format!("({c})*X^{k}"),
        })
        .collect();
    terms.push(format!("O(X^{prec})"));
    let mut lines = vec![terms.join(" + ")];
    if !l.skipped.is_empty() {
        lines.push(format!("skipped bad places: {}", render(&l.skipped).join(", ")));
    }
    Ok(Output { text: lines.join("\n"), json: json!({ "coeffs": coeffs, "skipped": render(&l.skipped) }) })
}

fn series_text(c: &[String], q: u64) -> String {
    let mut terms: Vec<String> = c
        .iter()
        .enumerate()
        .filter(|(_, x)| x.as_str() != "0")
        .map(|(n, x)| {
            let mono = if n == 0 { "x".to_string() } else { format!("x^{}", q.pow(n as u32)) };
            if x == "1" {
                mono
            } else {
                format!("({x})*{mono}")
            }
        })
        .collect();
    terms.push(format!("O(x^{})", q.pow(c.len() as u32)));
    terms.join(" + ")
}

fn exp_log(m: &KModuleArgs, prec: u64) -> Res {
    let phi = k_module(m)?;
    let q = phi.gen().fq().q as u64;
    let n = carlitz::terms_for_prec(q, prec);
    if n == 0 {
        return Err(Fail::Usage("--prec must be at least 2".into()));
    }
    let e = carlitz::exp_coeffs(&phi, n - 1)?;
    let l = carlitz::log_coeffs(&phi, n - 1)?;
    let ec: Vec<String> = e.coeffs.iter().map(|c| text::render_rat(c, "T")).collect();
    let lc: Vec<String> = l.coeffs.iter().map(|c| text::render_rat(c, "T")).collect();
    Ok(Output {
        text: format!("exp: {}\nlog: {}", series_text(&ec, q), series_text(&lc, q)),
        json: json!({ "exp": ec, "log": lc }),
    })
}

fn factor(field: &str, poly: &str, method: Method, seed: u64) -> Res {
    let fq = text::parse_base(field)?;
    let src = if poly == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Fail::Usage(e.to_string()))?;
        s
    } else {
        poly.to_string()
    };
    let f = text::parse_apoly(src.trim(), fq)?;
    if f.is_zero() {
        return Err(Fail::Domain("cannot factor 0".into()));
    }
    let factors = match method {
        Method::Dns => dnsfactor::dns_factor(&f, seed)?,
        Method::Cz => f.cz_factor(seed),
    };
    let lc = f.lc().unwrap();
    let mut lines = Vec::new();
    if !lc.is_one() {
        lines.push(format!("unit: {lc}"));
    }
    lines.extend(factors.iter().map(|(p, m)| format!("{}^{m}", text::render_apoly_csv(p))));
    Ok(Output {
        text: lines.join("\n"),
        json: json!({
            "unit": lc.value(),
            "factors": factors.iter().map(|(p, m)| json!({ "poly": apoly_json(p), "multiplicity": m })).collect::<Vec<_>>(),
        }),
    })
}

fn invariants(m: &ModuleArgs, rng: &mut ChaCha8Rng) -> Res {
    let phi = module_of(m)?;
    let chi = motive::frobenius_charpoly(&phi);
    let chr = phi.characteristic();
    let mut lines = vec![
        format!("rank: {}", phi.rank()),
        format!("characteristic: {}", text::render_apoly(&chr, "T")),
        format!("height: {}", phi.height()),
        format!("frobenius charpoly: {chi}"),
        format!("supersingular: {}", hom::is_supersingular(&phi)),
    ];
    let mut j = json!({
        "rank": phi.rank(),
        "characteristic": apoly_json(&chr),
        "height": phi.height(),
        "charpoly": charpoly_json(&chi),
        "supersingular": hom::is_supersingular(&phi),
    });
    if phi.rank() == 2 {
        let jv = phi.j_invariant()?;
        lines.push(format!("j: {jv}"));
        j["j"] = json!(jv.to_string());
    }
    let basic = phi.basic_j_invariants()?;
    let list: Vec<Value> = basic.iter().map(|((k, s), v)| json!({ "k": k, "s": s, "value": v.to_string() })).collect();
    for ((k, s), v) in &basic {
        lines.push(format!("J{k:?}^{s:?}: {v}"));
    }
    j["basic_j"] = json!(list);
    if hom::is_supersingular(&phi) {
        if let Ok(sh) = hom::supersingular_charpoly_shape(&phi, rng) {
            let c: Vec<String> = sh.c.iter().map(|x| x.to_string()).collect();
            lines.push(format!("supersingular shape: a = {}, b = {}, p = {}, c = {{{}}}", sh.a, sh.b, text::render_apoly(&sh.p, "T"), c.join(", ")));
            j["shape"] = json!({ "a": sh.a, "b": sh.b, "p": apoly_json(&sh.p), "c": c });
        }
    }
    Ok(Output { text: lines.join("\n"), json: j })
}

fn fq_list(s: &str, fq: &'static FqCtx) -> Result<Vec<Fq>, Fail> {
    let p = text::parse_apoly(s, fq)?;
    let n = s.split(',').count();
    Ok((0..n).map(|i| p.coeff(i)).collect())
}

fn config_json(cfg: &LrcConfig) -> Value {
    json!({
        "field": text::render_field(cfg.field()),
        "base": text::render_base(cfg.field().base),
        "module": text::render_module(&cfg.phi),
        "a": cfg.a.iter().map(|x| x.value()).collect::<Vec<_>>(),
        "t": cfg.t,
        "delta": cfg.delta,
        "s": cfg.s,
        "bases": cfg.bases.iter().map(|b| b.iter().map(text::render_felem).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

fn read_config(path: &str) -> Result<LrcConfig, Fail> {
    let raw = std::fs::read_to_string(path).map_err(|e| Fail::Usage(format!("{path}: {e}")))?;
    let v: Value = serde_json::from_str(&raw).map_err(|e| Fail::Usage(format!("{path}: {e}")))?;
    let bad = |k: &str| Fail::Usage(format!("{path}: missing or malformed `{k}`"));
    let st = |k: &str| v[k].as_str().ok_or_else(|| bad(k));
    let num = |k: &str| v[k].as_u64().map(|x| x as usize).ok_or_else(|| bad(k));
    let base = text::parse_base(st("base")?)?;
    let f = text::parse_field(st("field")?, Some(base))?;
    let phi = text::parse_module(st("module")?, f)?;
    let a = v["a"]
        .as_array()
        .ok_or_else(|| bad("a"))?
        .iter()
        .map(|x| x.as_u64().filter(|&n| n < base.q as u64).map(|n| Fq::new(base, n as u32)).ok_or_else(|| bad("a")))
        .collect::<Result<Vec<_>, _>>()?;
    let bases = v["bases"]
        .as_array()
        .ok_or_else(|| bad("bases"))?
        .iter()
        .map(|b| {
            b.as_array()
                .ok_or_else(|| bad("bases"))?
                .iter()
                .map(|w| Ok(text::parse_felem(w.as_str().ok_or_else(|| bad("bases"))?, f)?))
                .collect::<Result<Vec<_>, Fail>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LrcConfig::with_bases(&phi, &a, num("t")?, num("delta")?, num("s")?, bases)?)
}

fn word_json(w: &[FElem]) -> Value {
    json!(w.iter().map(text::render_felem).collect::<Vec<_>>())
}

fn lrc_cmd(cmd: &LrcCommand, rng: &mut ChaCha8Rng) -> Res {
    match cmd {
        LrcCommand::Setup { field, base, module, rank, a, t, delta, s, tries } => {
            let f = field_of(field, base.as_deref())?;
            let a = fq_list(a, f.base)?;
            let phi = match (module, rank) {
                (Some(m), _) => text::parse_module(m, f)?,
                (None, Some(r)) => lrc::search_module(f, *r, &a, *tries, rng)
                    .ok_or_else(|| Fail::Domain(format!("no module satisfying (H) found in {tries} tries")))?,
                (None, None) => return Err(Fail::Usage("give --module or --rank".into())),
            };
            let cfg = lrc::lrc_setup(&phi, &a, *t, *delta, *s)?;
            let j = config_json(&cfg);
            Ok(Output { text: serde_json::to_string_pretty(&j).unwrap(), json: j })
        }
        LrcCommand::Params { config, bruteforce } => {
            let cfg = read_config(config)?;
            let p = lrc::lrc_params(&cfg);
            let mut lines = vec![
                format!("n: {}", p.n),
                format!("k: {}", p.k),
                format!("d: {}", p.d),
                format!("locality: ({}, {})", p.locality.0, p.locality.1),
            ];
            let mut j = json!({ "n": p.n, "k": p.k, "d": p.d, "locality": [p.locality.0, p.locality.1] });
            if *bruteforce {
                let d = lrc::min_rank_distance_bruteforce(&cfg)?;
                lines.push(format!("bruteforce d: {d}"));
                j["bruteforce_d"] = json!(d);
            }
            Ok(Output { text: lines.join("\n"), json: j })
        }
        LrcCommand::Encode { config, message } => {
            let cfg = read_config(config)?;
            let msg = match message {
                Some(m) => Message {
                    parts: m.split(';').map(|p| text::parse_ore(p, cfg.field())).collect::<Result<Vec<OrePoly<FElem>>, _>>()?,
                },
                None => Message::random(&cfg, rng),
            };
            let w = lrc::lrc_encode(&cfg, &msg)?;
            let parts: Vec<String> = msg.parts.iter().map(text::render_ore).collect();
            Ok(Output {
                text: w.entries.iter().map(text::render_felem).collect::<Vec<_>>().join("; "),
                json: json!({ "message": parts, "codeword": word_json(&w.entries), "rank": w.rank() }),
            })
        }
        LrcCommand::Recover { config, word } => {
            let cfg = read_config(config)?;
            let w = word
                .split(';')
                .map(|e| if e.trim() == "?" { Ok(None) } else { text::parse_felem(e, cfg.field()).map(Some) })
                .collect::<Result<Vec<_>, _>>()?;
            let out = lrc::local_recover(&cfg, &w)?;
            Ok(Output { text: out.iter().map(text::render_felem).collect::<Vec<_>>().join("; "), json: json!({ "codeword": word_json(&out) }) })
        }
    }
}
