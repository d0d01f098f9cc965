use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use weylrack::cli_harness::cache::canonical_json;
use weylrack::cli_harness::{run_suite, Cache, ResultRecord, Suite, SuiteParams, DEFAULT_SEED};
use weylrack::conj_classes::{all_classes, centralizer_of_class, enumerate_class};
use weylrack::fk_quadratic::{
    finiteness_probe, fk_presentation, general_presentation, graded_dims, Engine, Signs, DEFAULT_FK_BUDGET,
};
use weylrack::rack_core::{sq, square_commutes, square_commutes_symmetric};
use weylrack::typed_classifier::{classify, classify_all, ClassifyOptions, TypeDVerdict};
use weylrack::yd_nichols::{build_yd_module, nichols_graded_dims, CentralizerRep, CycScalar, Mat, DEFAULT_WORD_BUDGET};
use weylrack::{Error, Group, GroupKind, Result, SignedPermutation};

#[derive(Parser)]
#[command(name = "weylrack", version, about = "Racks, type-D classes and Nichols algebras over W(B_n) and W(D_n)")]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Work budget; the meaning depends on the command.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Directory of the JSON-lines result cache.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    B,
    D,
    S,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Linear,
    Rewrite,
}

#[derive(Subcommand)]
enum Command {
    /// Conjugacy classes with sizes and centralizer orders.
    Classes {
        #[arg(long, value_enum, default_value = "b")]
        group: Kind,
        #[arg(long)]
        n: usize,
    },
    /// Type-D verdicts for one class or for every class.
    Typed {
        #[arg(long, value_enum, default_value = "b")]
        group: Kind,
        #[arg(long)]
        n: usize,
        /// Class representative as BITS:CYCLES; all classes when omitted.
        #[arg(long)]
        rep: Option<String>,
        /// Include the full decomposition in the output.
        #[arg(long)]
        witness: bool,
    },
    /// sq(x, y) = x ▷ (y ▷ (x ▷ y)).
    Sq { x: String, y: String },
    /// Graded dimensions of the Nichols algebra of a class with a centralizer representation.
    Nichols {
        #[arg(long, value_enum, default_value = "b")]
        group: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        rep: String,
        /// Character values on the centralizer generators (`1`, `-1`, `k/m` for ζ_m^k),
        /// comma separated, or `@FILE` with a JSON list of matrices of such entries.
        #[arg(long = "char", default_value = "trivial")]
        character: String,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
    },
    /// Graded dimensions of the quadratic algebra ℰ_n or A(α,β,γ,λ).
    Fk {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
        /// JSON file with the α, β, γ, λ tables.
        #[arg(long)]
        signs: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "rewrite")]
        engine: EngineArg,
    },
    /// Runs a verification suite; exits with status 1 unless every check passes.
    Verify {
        suite: String,
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long)]
        max_rank: Option<usize>,
    },
}

fn group(kind: Kind, n: usize) -> Result<Group> {
    Group::new(
        match kind {
            Kind::B => GroupKind::B,
            Kind::D => GroupKind::D,
            Kind::S => GroupKind::S,
        },
        n,
    )
}

fn element(text: &str, n: usize) -> Result<SignedPermutation> {
    SignedPermutation::parse_with_rank(text, n)
}

fn to_value<T: Serialize>(v: &T) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::Io(e.to_string()))
}

/// Output of one command, printed as JSON or as text.
struct Output {
    payload: Value,
    text: String,
    ok: bool,
}

fn classes_cmd(g: Group) -> Result<Output> {
    let mut rows = Vec::new();
    let mut text = format!("{g}: {} classes\n", 0);
    for c in all_classes(g)? {
        let t = c.rep().signed_cycle_type();
        text.push_str(&format!(
            "  {:<28} size {:>8}  centralizer {:>8}  type +{:?} -{:?}\n",
            c.rep().to_string(),
            c.len(),
            c.centralizer_order(),
            t.positive,
            t.negative
        ));
        rows.push(json!({
            "rep": c.rep(),
            "size": c.len(),
            "centralizer_order": c.centralizer_order() as u64,
            "signed_cycle_type": t,
        }));
    }
    text = text.replacen(": 0 classes", &format!(": {} classes", rows.len()), 1);
    Ok(Output { payload: json!({ "group": g, "classes": rows }), text, ok: true })
}

fn verdict_value(v: &TypeDVerdict, witness: bool) -> Result<Value> {
    if witness {
        return to_value(v);
    }
    Ok(json!({
        "rep": v.rep,
        "status": v.status,
        "lemma_tag": v.lemma_tag,
        "exception_case": v.exception_case,
        "pair": v.witness.as_ref().map(|w| json!({"a": w.a, "b": w.b, "R": w.r.len(), "S": w.s.len()})),
        "detail": v.detail,
    }))
}

fn typed_cmd(g: Group, rep: Option<&str>, witness: bool, opts: &ClassifyOptions) -> Result<Output> {
    let verdicts = match rep {
        Some(r) => vec![classify(g, &element(r, g.n)?, opts)],
        None => classify_all(g, opts),
    };
    let mut text = String::new();
    for v in &verdicts {
        let how = match (&v.lemma_tag, v.exception_case) {
            (Some(t), _) => format!(" via {t}"),
            (None, Some(e)) => format!(" (case {e})"),
            _ => v.detail.as_ref().map(|d| format!(" ({d})")).unwrap_or_default(),
        };
        text.push_str(&format!("  {:<28} {}{how}\n", v.rep.to_string(), v.status));
    }
    let rows = verdicts.iter().map(|v| verdict_value(v, witness)).collect::<Result<Vec<_>>>()?;
    Ok(Output { payload: json!({ "group": g, "verdicts": rows }), text, ok: true })
}

fn sq_cmd(x: &str, y: &str) -> Result<Output> {
    let x: SignedPermutation = x.parse()?;
    let y = element(y, x.rank())?;
    let s = sq(&x, &y)?;
    let commutes = square_commutes(&x, &y)?;
    let symmetric = square_commutes_symmetric(&x, &y)?;
    let text = format!("sq({x}, {y}) = {s}\nsquare commutative: {commutes} (symmetric: {symmetric})\n");
    Ok(Output {
        payload: json!({ "x": x, "y": y, "sq": s, "square_commutes": commutes, "symmetric": symmetric }),
        text,
        ok: true,
    })
}

fn parse_matrices(path: &str) -> Result<Vec<Vec<Vec<String>>>> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Parse { text: path.to_string(), reason: e.to_string() })
}

fn nichols_cmd(g: Group, rep: &str, chars: &str, max_degree: usize, budget: u64) -> Result<Output> {
    let class = enumerate_class(g, element(rep, g.n)?)?;
    let cent = centralizer_of_class(&class);
    let representation = if chars == "trivial" {
        CentralizerRep::trivial(&cent, 1)?
    } else if let Some(path) = chars.strip_prefix('@') {
        let mats = parse_matrices(path)?;
        let modulus = mats
            .iter()
            .flatten()
            .flatten()
            .map(|e| CycScalar::parse_order(e))
            .fold(1, weylrack::yd_nichols::cyclotomic::lcm);
        let images = mats
            .iter()
            .map(|m| {
                let rows = m
                    .iter()
                    .map(|r| r.iter().map(|e| CycScalar::parse_root(e, modulus)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                Mat::from_rows(rows)
            })
            .collect::<Result<Vec<_>>>()?;
        CentralizerRep::new(&cent, images)?
    } else {
        let parts: Vec<&str> = chars.split(',').map(str::trim).collect();
        let modulus = parts.iter().map(|p| CycScalar::parse_order(p)).fold(1, weylrack::yd_nichols::cyclotomic::lcm);
        let values = parts.iter().map(|p| CycScalar::parse_root(p, modulus)).collect::<Result<Vec<_>>>()?;
        CentralizerRep::character(&cent, &values)?
    };
    let module = build_yd_module(&class, &representation)?;
    let dims = nichols_graded_dims(&module.braided, max_degree, budget)?;
    let text = format!(
        "class of {} in {g}: {} elements, centralizer generators [{}]\ngraded dims {:?}{}\n",
        class.rep(),
        class.len(),
        cent.generators.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "),
        dims.dims,
        match dims.vanishes_at {
            Some(d) => format!(", zero from degree {d}, total {}", dims.total()),
            None => String::new(),
        }
    );
    Ok(Output {
        payload: json!({
            "class_size": class.len(),
            "centralizer_generators": cent.generators,
            "graded_dims": dims.dims,
            "vanishes_at": dims.vanishes_at,
            "total": dims.vanishes_at.map(|_| dims.total()),
        }),
        text,
        ok: true,
    })
}

fn fk_cmd(n: usize, max_degree: usize, signs: Option<&PathBuf>, engine: EngineArg, budget: u64) -> Result<Output> {
    let p = match signs {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            let s: Signs = serde_json::from_str(&text)
                .map_err(|e| Error::Parse { text: path.display().to_string(), reason: e.to_string() })?;
            general_presentation(n, &s)?
        }
        None => fk_presentation(n)?,
    };
    let engine = match engine {
        EngineArg::Linear => Engine::Linear,
        EngineArg::Rewrite => Engine::Rewrite,
    };
    let dims = graded_dims(&p, max_degree, engine, budget);
    let probe = finiteness_probe(&p, max_degree, budget);
    let text = format!(
        "graded dims {:?}, total {}{}\nprobe: {}\n",
        dims.dims,
        dims.total(),
        if dims.truncated { " (truncated)" } else { "" },
        canonical_json(&probe)?
    );
    Ok(Output {
        payload: json!({
            "graded_dims": dims.dims,
            "total": dims.total(),
            "truncated": dims.truncated,
            "probe": probe,
            "constraints": p.constraints,
        }),
        text,
        ok: true,
    })
}

/// Serves `compute` from the cache when the same command and inputs were stored.
fn cached(
    cache: Option<&Cache>,
    command: &str,
    inputs: Value,
    compute: impl FnOnce() -> Result<Output>,
) -> Result<Output> {
    let Some(cache) = cache else {
        return compute();
    };
    if let Some(r) = cache.lookup(command, &inputs)? {
        let mut payload = r.payload.clone();
        payload["cached"] = Value::Bool(true);
        if r.is_stale() {
            payload["stale"] = Value::Bool(true);
        }
        let text = format!("(cached{})\n{}", if r.is_stale() { ", stale" } else { "" }, canonical_json(&r.payload)?);
        return Ok(Output { payload, text, ok: true });
    }
    let start = Instant::now();
    let mut out = compute()?;
    let record = ResultRecord::new(command, inputs, out.payload.clone(), start.elapsed().as_millis() as u64);
    cache.append(&record)?;
    out.payload["cached"] = Value::Bool(false);
    Ok(out)
}

fn run(cli: Cli) -> Result<Output> {
    let cache = cli.cache_dir.as_deref().map(Cache::open).transpose()?;
    let cache = cache.as_ref();
    match &cli.command {
        Command::Classes { group: k, n } => classes_cmd(group(*k, *n)?),
        Command::Typed { group: k, n, rep, witness } => {
            let g = group(*k, *n)?;
            let mut opts = ClassifyOptions::default();
            if let Some(b) = cli.budget {
                opts.budget = b;
            }
            let inputs = json!({"group": g, "rep": rep, "witness": witness, "budget": opts.budget});
            cached(cache, "typed", inputs, || typed_cmd(g, rep.as_deref(), *witness, &opts))
        }
        Command::Sq { x, y } => sq_cmd(x, y),
        Command::Nichols { group: k, n, rep, character, max_degree } => {
            let g = group(*k, *n)?;
            let budget = cli.budget.unwrap_or(DEFAULT_WORD_BUDGET);
            let inputs = json!({"group": g, "rep": rep, "char": character, "max_degree": max_degree, "budget": budget});
            cached(cache, "nichols", inputs, || nichols_cmd(g, rep, character, *max_degree, budget))
        }
        Command::Fk { n, max_degree, signs, engine } => {
            let budget = cli.budget.unwrap_or(DEFAULT_FK_BUDGET);
            let signs_text = signs.as_ref().map(std::fs::read_to_string).transpose()?;
            let engine_name = match engine {
                EngineArg::Linear => "linear",
                EngineArg::Rewrite => "rewrite",
            };
            let inputs = json!({"n": n, "max_degree": max_degree, "signs": signs_text, "engine": engine_name, "budget": budget});
            cached(cache, "fk", inputs, || fk_cmd(*n, *max_degree, signs.as_ref(), *engine, budget))
        }
        Command::Verify { suite, samples, max_rank } => {
            let s: Suite = suite.parse()?;
            let params = SuiteParams { seed: cli.seed, samples: *samples, max_rank: *max_rank, budget: cli.budget };
            let report = run_suite(s, &params)?;
            Ok(Output { payload: to_value(&report)?, text: report.render_text(), ok: report.passed })
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(out) => {
            if json {
                match canonical_json(&out.payload) {
                    Ok(s) => println!("{s}"),
                    Err(e) => {
                        eprintln!("error: {e}");
                        return ExitCode::from(2);
                    }
                }
            } else {
                print!("{}", out.text);
            }
            if out.ok {
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
