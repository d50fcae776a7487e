mod cache;
mod render;

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use flagcoh::charring::{demazure_char, FormalCharacter};
use flagcoh::cohomology::{h_full_flag, h_line_bundle, h_module_coefficients};
use flagcoh::rootsys::{CartanType, RootSystem, Weight};
use flagcoh::strings::DecomposeMode;
use flagcoh::tangent::{
    g_mod_b_weights, g_weights, p_j_weights, schubert_stabilizer, tangent_report,
};
use flagcoh::twisted::{twisted_bsdh_report, twisted_schubert_report};
use flagcoh::verify;
use flagcoh::weyl::{ReducedWord, Word, DEFAULT_ENUMERATION_GUARD, DEFAULT_REDUCED_WORD_CAP};

use cache::{Cache, Entry};

#[derive(Parser, Debug)]
#[command(
    name = "flagcoh",
    version,
    about = "Exact cohomology on flag, Schubert and Bott-Samelson varieties"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    output: Output,

    /// String decomposition mode: greedy, or strict to flag ambiguous splittings.
    #[arg(long, global = true, default_value = "greedy")]
    mode: DecomposeMode,

    /// Directory of the result cache; caching is off when unset.
    #[arg(long, global = true, env = "FLAGCOH_CACHE_DIR")]
    cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Table,
}

#[derive(Args, Debug)]
struct TypeArg {
    /// Cartan type, e.g. A2, B2, D4, E8.
    #[arg(long = "type", value_name = "TYPE")]
    ty: CartanType,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct WeightArg {
    /// Weight in fundamental-weight coordinates, e.g. "1,-2".
    #[arg(long, allow_hyphen_values = true)]
    weight: Option<String>,

    /// Weight in simple-root coordinates, e.g. "1,0" for the first simple root.
    #[arg(long, allow_hyphen_values = true)]
    weight_root_basis: Option<String>,
}

#[derive(Args, Debug)]
struct WordArg {
    /// Word as 1-based comma-separated simple indices, e.g. "1,2,1".
    #[arg(long, allow_hyphen_values = true)]
    word: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the Cartan matrix, simple and positive roots, rho and the highest root.
    Roots {
        #[command(flatten)]
        ty: TypeArg,
    },
    /// Weyl group data: an element's length, descents and reduced words, or an enumeration.
    Weyl {
        #[command(flatten)]
        ty: TypeArg,
        /// Element to describe, as a 1-based word.
        #[arg(long)]
        word: Option<String>,
        /// List all elements of W_J.
        #[arg(long)]
        enumerate: bool,
        /// J for --enumerate, 1-based; defaults to all simple roots.
        #[arg(long)]
        subset: Option<String>,
        /// Refuse to enumerate a group larger than this.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_GUARD)]
        guard: u128,
        /// Most reduced words to list for one element.
        #[arg(long, default_value_t = DEFAULT_REDUCED_WORD_CAP)]
        cap: usize,
    },
    /// Demazure character D_w(e^lambda).
    Demazure {
        #[command(flatten)]
        ty: TypeArg,
        #[command(flatten)]
        word: WordArg,
        #[command(flatten)]
        weight: WeightArg,
    },
    /// H^j(w, lambda) for the line bundle lambda on a Bott-Samelson variety.
    Hcoh {
        #[command(flatten)]
        ty: TypeArg,
        #[command(flatten)]
        word: WordArg,
        #[command(flatten)]
        weight: WeightArg,
    },
    /// H^j(G/B, V) for a weight multiset V, over a reduced word of w0 unless --word is given.
    HcohMod {
        #[command(flatten)]
        ty: TypeArg,
        /// Weights separated by ';', each optionally "k*" for multiplicity k; or one of
        /// "g", "g/b", "p:<J>" (e.g. "p:1" or "p:" for the Borel).
        #[arg(long, allow_hyphen_values = true)]
        module: String,
        /// Read the --module weights in simple-root coordinates.
        #[arg(long)]
        root_basis: bool,
        /// Reduced word of w; defaults to a reduced word of w0.
        #[arg(long)]
        word: Option<String>,
    },
    /// Borel-Weil-Bott: H^j(G/B, lambda) in closed form.
    Bwb {
        #[command(flatten)]
        ty: TypeArg,
        #[command(flatten)]
        weight: WeightArg,
    },
    /// Tangent-sheaf cohomology of a Bott-Samelson variety.
    BsdhTangent {
        #[command(flatten)]
        ty: TypeArg,
        #[command(flatten)]
        word: WordArg,
    },
    /// I(w): the simple roots whose parabolic stabilizes X(w).
    Stab {
        #[command(flatten)]
        ty: TypeArg,
        #[command(flatten)]
        word: WordArg,
    },
    /// Automorphism report for the G-Schubert variety of w (simply-laced types).
    TwistedSchubert {
        #[command(flatten)]
        ty: TypeArg,
        #[command(flatten)]
        word: WordArg,
    },
    /// Automorphism and H^1 report for the G-Bott-Samelson variety of a reduced word.
    TwistedBsdh {
        #[command(flatten)]
        ty: TypeArg,
        #[command(flatten)]
        word: WordArg,
    },
    /// Run verification suites.
    Verify {
        /// One of: example-4-12, euler, bwb, demazure-weyl, facts,
        /// simply-laced-vanishing, non-simply-laced-witness, word-independence.
        #[arg(long, required_unless_present = "all", conflicts_with = "all")]
        suite: Option<String>,
        /// Run every suite.
        #[arg(long)]
        all: bool,
    },
}

fn parse_ints(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .with_context(|| format!("bad integer '{t}' in '{s}'"))
        })
        .collect()
}

fn parse_weight(rs: &RootSystem, s: &str, root_basis: bool) -> Result<Weight> {
    let v = parse_ints(s)?;
    if root_basis {
        Ok(rs.from_root_coords(&v)?)
    } else {
        let w = Weight::new(v);
        rs.check_weight(&w)?;
        Ok(w)
    }
}

fn weight_arg(rs: &RootSystem, w: &WeightArg) -> Result<Weight> {
    match (&w.weight, &w.weight_root_basis) {
        (Some(s), None) => parse_weight(rs, s, false),
        (None, Some(s)) => parse_weight(rs, s, true),
        _ => bail!("give exactly one of --weight and --weight-root-basis"),
    }
}

fn parse_subset(rs: &RootSystem, s: &str) -> Result<BTreeSet<usize>> {
    let mut out = BTreeSet::new();
    for t in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let i: usize = t.parse().with_context(|| format!("bad index '{t}'"))?;
        if i == 0 || i > rs.rank() {
            bail!("simple index {i} out of range 1..={}", rs.rank());
        }
        out.insert(i - 1);
    }
    Ok(out)
}

fn parse_module(rs: &RootSystem, s: &str, root_basis: bool) -> Result<FormalCharacter> {
    let s = s.trim();
    match s {
        "g" => return Ok(g_weights(rs).character),
        "g/b" => return Ok(g_mod_b_weights(rs).character),
        _ => {}
    }
    if let Some(j) = s.strip_prefix("p:") {
        return Ok(p_j_weights(rs, &parse_subset(rs, j)?)?.character);
    }
    let mut ch = FormalCharacter::new();
    for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (mult, w) = match part.split_once('*') {
            Some((k, w)) => (
                k.trim()
                    .parse::<i64>()
                    .with_context(|| format!("bad multiplicity in '{part}'"))?,
                w,
            ),
            None => (1, part),
        };
        if mult < 0 {
            bail!("negative multiplicity in '{part}'");
        }
        ch.add_term(parse_weight(rs, w, root_basis)?, mult);
    }
    Ok(ch)
}

fn reduced(rs: &RootSystem, s: &str) -> Result<ReducedWord> {
    let w: Word = s.parse()?;
    Ok(rs.reduced_word(&w)?)
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("results serialize to JSON")
}

fn index_list(set: &BTreeSet<usize>) -> Vec<usize> {
    set.iter().map(|i| i + 1).collect()
}

/// A computed result: the JSON to print and whether it is certified.
struct Outcome {
    value: Value,
    certified: bool,
}

fn roots(rs: &RootSystem) -> Value {
    let positive: Vec<Value> = rs
        .positive_roots()
        .iter()
        .map(|r| json!({"weight": r.weight, "root_coords": r.root_coords, "height": r.height()}))
        .collect();
    json!({
        "type": rs.cartan_type(),
        "rank": rs.rank(),
        "cartan_matrix": rs.cartan_matrix(),
        "simple_roots": rs.simple_roots(),
        "positive_roots": positive,
        "rho": rs.rho(),
        "highest_root": rs.highest_root().weight,
        "simply_laced": rs.cartan_type().simply_laced(),
    })
}

fn weyl(
    rs: &RootSystem,
    word: Option<&str>,
    enumerate: bool,
    subset: Option<&str>,
    guard: u128,
    cap: usize,
) -> Result<Value> {
    let mut out = serde_json::Map::new();
    out.insert("type".into(), json!(rs.cartan_type()));
    if let Some(s) = word {
        let w = rs.element(&s.parse::<Word>()?)?;
        let mut e = serde_json::Map::new();
        e.insert("reduced_word".into(), json!(w.word()));
        e.insert("length".into(), json!(w.length()));
        e.insert("matrix".into(), json!(w.matrix()));
        e.insert(
            "left_descents".into(),
            json!(index_list(&rs.left_descents(&w))),
        );
        e.insert(
            "right_descents".into(),
            json!(index_list(&rs.right_descents(&w))),
        );
        e.insert("is_longest".into(), json!(w == rs.longest()));
        let words = rs.all_reduced_words(&w, cap)?;
        e.insert("reduced_words".into(), json!(words));
        out.insert("element".into(), Value::Object(e));
    }
    let j = match subset {
        Some(s) => parse_subset(rs, s)?,
        None => (0..rs.rank()).collect(),
    };
    out.insert("subset".into(), json!(index_list(&j)));
    out.insert("order".into(), json!(rs.parabolic_order(&j).to_string()));
    out.insert("longest_word".into(), json!(rs.longest_element(&j).word()));
    if enumerate {
        let elts: Vec<Value> = rs
            .enumerate(&j, guard)?
            .iter()
            .map(|w| json!({"word": w.word(), "length": w.length()}))
            .collect();
        out.insert("elements".into(), Value::Array(elts));
    }
    Ok(Value::Object(out))
}

fn system(ty: &TypeArg) -> RootSystem {
    RootSystem::build(ty.ty)
}

/// Computes the result for a cacheable command, consulting the cache first.
fn cached(
    cache: Option<&Cache>,
    rs: &RootSystem,
    command: &str,
    input: Value,
    compute: impl FnOnce() -> Result<Outcome>,
) -> Result<Outcome> {
    let Some(cache) = cache else { return compute() };
    let key = Cache::key(&rs.cartan_type().to_string(), command, &input);
    if let Some(e) = cache.get(&key) {
        return Ok(Outcome {
            value: e.result,
            certified: e.certified,
        });
    }
    let out = compute()?;
    cache.put(
        &key,
        &Entry {
            certified: out.certified,
            result: out.value.clone(),
        },
    )?;
    Ok(out)
}

fn graded_outcome(g: &flagcoh::cohomology::GradedCharacter) -> Outcome {
    Outcome {
        value: to_value(g),
        certified: g.is_exact(),
    }
}

fn run(cli: &Cli) -> Result<(Outcome, Option<RootSystem>)> {
    let cache = cli.cache_dir.as_deref().map(Cache::open).transpose()?;
    let cache = cache.as_ref();
    let mode = cli.mode;
    let mode_name = match mode {
        DecomposeMode::Greedy => "greedy",
        DecomposeMode::Strict => "strict",
    };
    let out = match &cli.command {
        Command::Roots { ty } => {
            let rs = system(ty);
            (
                Outcome {
                    value: roots(&rs),
                    certified: true,
                },
                Some(rs),
            )
        }
        Command::Weyl {
            ty,
            word,
            enumerate,
            subset,
            guard,
            cap,
        } => {
            let rs = system(ty);
            let v = weyl(
                &rs,
                word.as_deref(),
                *enumerate,
                subset.as_deref(),
                *guard,
                *cap,
            )?;
            (
                Outcome {
                    value: v,
                    certified: true,
                },
                Some(rs),
            )
        }
        Command::Demazure { ty, word, weight } => {
            let rs = system(ty);
            let w = reduced(&rs, &word.word)?;
            let l = weight_arg(&rs, weight)?;
            let input = json!({"word": w, "weight": l});
            let o = cached(cache, &rs, "demazure", input, || {
                Ok(Outcome {
                    value: to_value(&demazure_char(&rs, &w, &l)),
                    certified: true,
                })
            })?;
            (o, Some(rs))
        }
        Command::Hcoh { ty, word, weight } => {
            let rs = system(ty);
            let w = reduced(&rs, &word.word)?;
            let l = weight_arg(&rs, weight)?;
            let input = json!({"word": w, "weight": l, "mode": mode_name});
            let o = cached(cache, &rs, "hcoh", input, || {
                Ok(graded_outcome(&h_line_bundle(&rs, &w, &l, mode)?))
            })?;
            (o, Some(rs))
        }
        Command::HcohMod {
            ty,
            module,
            root_basis,
            word,
        } => {
            let rs = system(ty);
            let w = match word {
                Some(s) => reduced(&rs, s)?,
                None => rs.longest_word(),
            };
            let v = parse_module(&rs, module, *root_basis)?;
            let input = json!({"word": w, "module": v, "mode": mode_name});
            let o = cached(cache, &rs, "hcoh-mod", input, || {
                Ok(graded_outcome(&h_module_coefficients(&rs, &w, &v, mode)?))
            })?;
            (o, Some(rs))
        }
        Command::Bwb { ty, weight } => {
            let rs = system(ty);
            let l = weight_arg(&rs, weight)?;
            let input = json!({"weight": l});
            let o = cached(cache, &rs, "bwb", input, || {
                Ok(graded_outcome(&h_full_flag(&rs, &l)?))
            })?;
            (o, Some(rs))
        }
        Command::BsdhTangent { ty, word } => {
            let rs = system(ty);
            let w = reduced(&rs, &word.word)?;
            let input = json!({"word": w, "mode": mode_name});
            let o = cached(cache, &rs, "bsdh-tangent", input, || {
                let r = tangent_report(&rs, &w, mode)?;
                let certified = r.cohomology.is_exact();
                Ok(Outcome {
                    value: to_value(&r),
                    certified,
                })
            })?;
            (o, Some(rs))
        }
        Command::Stab { ty, word } => {
            let rs = system(ty);
            let w = rs.element(&word.word.parse::<Word>()?)?;
            let v = json!({
                "word": w.word(),
                "stabilizer": index_list(&schubert_stabilizer(&rs, &w)),
            });
            (
                Outcome {
                    value: v,
                    certified: true,
                },
                Some(rs),
            )
        }
        Command::TwistedSchubert { ty, word } => {
            let rs = system(ty);
            let w = rs.element(&word.word.parse::<Word>()?)?;
            let input = json!({"word": w.word(), "mode": mode_name});
            let o = cached(cache, &rs, "twisted-schubert", input, || {
                let r = twisted_schubert_report(&rs, &w, mode)?;
                Ok(Outcome {
                    value: to_value(&r),
                    certified: r.certified(),
                })
            })?;
            (o, Some(rs))
        }
        Command::TwistedBsdh { ty, word } => {
            let rs = system(ty);
            let w = reduced(&rs, &word.word)?;
            let input = json!({"word": w, "mode": mode_name});
            let o = cached(cache, &rs, "twisted-bsdh", input, || {
                let r = twisted_bsdh_report(&rs, &w, mode)?;
                Ok(Outcome {
                    value: to_value(&r),
                    certified: r.certified(),
                })
            })?;
            (o, Some(rs))
        }
        Command::Verify { suite, all } => {
            let reports = if *all {
                verify::run_all()?
            } else {
                let name = suite
                    .as_deref()
                    .expect("clap requires --suite without --all");
                match verify::run_suite(name) {
                    Some(r) => vec![r?],
                    None => bail!(
                        "unknown suite '{name}'; expected one of {}",
                        verify::SUITES.join(", ")
                    ),
                }
            };
            let passed = reports.iter().all(|r| r.passed);
            let v = json!({"passed": passed, "suites": reports});
            (
                Outcome {
                    value: v,
                    certified: passed,
                },
                None,
            )
        }
    };
    Ok(out)
}

fn verify_table(v: &Value) -> String {
    let mut s = String::new();
    for r in v["suites"].as_array().into_iter().flatten() {
        let status = if r["passed"] == true { "PASS" } else { "FAIL" };
        s.push_str(&format!(
            "{status} {} ({} checks, {} failures, {} ms)\n",
            r["name"].as_str().unwrap_or("?"),
            r["checks"],
            r["failure_count"],
            r["elapsed_ms"]
        ));
        for line in r["failures"]
            .as_array()
            .into_iter()
            .flatten()
            .chain(r["notes"].as_array().into_iter().flatten())
        {
            s.push_str(&format!("    {}\n", line.as_str().unwrap_or_default()));
        }
    }
    s
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok((out, rs)) => {
            let text = match cli.output {
                Output::Json => {
                    serde_json::to_string_pretty(&out.value).expect("json value serializes") + "\n"
                }
                Output::Table if matches!(cli.command, Command::Verify { .. }) => {
                    verify_table(&out.value)
                }
                Output::Table => render::table(&out.value, rs.as_ref()),
            };
            print!("{text}");
            if out.certified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
