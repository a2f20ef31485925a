//! `insdel-lab`: encode, corrupt and analyze locally decodable
//! insertion/deletion codes from the command line.

use clap::{Args, Parser, Subcommand};
use insdel_lab::analysis::{good_sets_bruteforce, hq_bound_check};
use insdel_lab::bits::{BitWord, PadPolicy};
use insdel_lab::channels::{
    corrupt_with, make_adversarial_spec, make_oblivious_spec, ChannelSample, IidDeletionChannel,
    LayeredChannel, TwoQueryChannel, Type1Channel,
};
use insdel_lab::codes::{
    hadamard_encode, otp_decode, otp_encode, otp_keygen, DecoderQueryProfile, PrivateKey,
    SpacedHadamardCode,
};
use insdel_lab::experiments::{self, ExperimentConfig, RunReport};
use insdel_lab::quadratic::{
    correlation_structure, parse_polynomial, symplectic_decompose, symplectic_rank,
    zero_count_bruteforce, zero_probability, CorrelationStructure,
};
use insdel_lab::rng::seed_rng;
use std::fs;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "insdel-lab", version, about)]
struct Cli {
    /// Master seed for all randomized subcommands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for experiments (1 = bit-exact single-threaded baseline).
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Output file (CSV for experiments/goodsets, text otherwise).
    #[arg(long, global = true)]
    out: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Encode a message.
    Encode(EncodeArgs),
    /// Decode one message bit from a (possibly corrupted) word.
    Decode(DecodeArgs),
    /// Run a deletion channel against a word.
    Corrupt(CorruptArgs),
    /// Brute-force the good query sets of a code.
    Goodsets(GoodsetsArgs),
    /// Analyze an F2 quadratic polynomial.
    Quad(QuadArgs),
    /// Run one of the exact verification suites.
    Verify(VerifyArgs),
    /// Run an experiment from a JSON config file.
    Experiment(ExperimentArgs),
    /// List the experiment catalog.
    List,
}

#[derive(Args)]
struct EncodeArgs {
    /// Code family: hadamard, spaced, otp.
    #[arg(long)]
    code: String,
    /// Message bits, e.g. 1011.
    #[arg(long, short = 'x')]
    x: String,
    /// Spacing / replication parameter for spaced and otp codes.
    #[arg(long)]
    t: Option<usize>,
    /// Private-key file (otp). Generated fresh (and written) when absent.
    #[arg(long)]
    key: Option<String>,
}

#[derive(Args)]
struct DecodeArgs {
    /// Code family: spaced, otp.
    #[arg(long)]
    code: String,
    /// Received word bits.
    #[arg(long, short = 'y')]
    y: String,
    /// Message index to decode, 0-based.
    #[arg(long, short = 'i')]
    i: usize,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    /// Private-key file (otp).
    #[arg(long)]
    key: Option<String>,
}

#[derive(Args)]
struct CorruptArgs {
    /// Channel: type1, two-query, oblivious, adversarial, iid.
    #[arg(long)]
    channel: String,
    /// Codeword length m (universe 2m for the augmented processes).
    #[arg(long)]
    m: usize,
    #[arg(long, default_value_t = 0.1)]
    delta: f64,
    /// Prefix deletion count (type1).
    #[arg(long)]
    e: Option<usize>,
    /// Per-bit deletion rate (iid).
    #[arg(long)]
    alpha: Option<f64>,
    /// Decoder profile JSON (adversarial).
    #[arg(long)]
    profile: Option<String>,
    /// Message index the adversarial channel targets.
    #[arg(long, default_value_t = 0)]
    i: usize,
    /// Input word; a uniform word of length m is drawn when absent.
    #[arg(long)]
    word: Option<String>,
}

#[derive(Args)]
struct GoodsetsArgs {
    /// Code family: hadamard, spaced.
    #[arg(long)]
    code: String,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long, short = 'q')]
    q: usize,
    #[arg(long)]
    epsilon: f64,
}

#[derive(Args)]
struct QuadArgs {
    /// File holding the polynomial text, e.g. "x1*x2 + x3 + 1".
    #[arg(long)]
    analyze: String,
    /// Also probe correlation with variable x_{i+1} (0-based index).
    #[arg(long)]
    correlate: Option<usize>,
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite: anticoncentration, entropy.
    suite: String,
}

#[derive(Args)]
struct ExperimentArgs {
    /// JSON config file.
    #[arg(long)]
    config: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn write_or_print(out: &Option<String>, content: &str) -> insdel_lab::Result<()> {
    match out {
        Some(path) => fs::write(path, content)
            .map_err(|e| insdel_lab::Error::InvalidParameter(format!("writing {path}: {e}"))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> insdel_lab::Result<ExitCode> {
    match cli.command {
        Command::Encode(args) => {
            let x: BitWord = args.x.parse()?;
            let codeword = match args.code.as_str() {
                "hadamard" => hadamard_encode(&x),
                "spaced" => {
                    let t = args.t.ok_or_else(|| {
                        insdel_lab::Error::InvalidParameter("spaced code needs --t".into())
                    })?;
                    SpacedHadamardCode::new(x.len(), t)?.encode(&x)
                }
                "otp" => {
                    let key = match &args.key {
                        Some(path) if fs::metadata(path).is_ok() => {
                            PrivateKey::from_text(&fs::read_to_string(path).map_err(|e| {
                                insdel_lab::Error::InvalidParameter(format!("{path}: {e}"))
                            })?)?
                        }
                        _ => {
                            let t = args.t.ok_or_else(|| {
                                insdel_lab::Error::InvalidParameter("otp keygen needs --t".into())
                            })?;
                            let key = otp_keygen(x.len(), t, &mut seed_rng(cli.seed))?;
                            if let Some(path) = &args.key {
                                fs::write(path, key.to_text()).map_err(|e| {
                                    insdel_lab::Error::InvalidParameter(format!("{path}: {e}"))
                                })?;
                            }
                            key
                        }
                    };
                    otp_encode(&x, &key)
                }
                other => {
                    return Err(insdel_lab::Error::InvalidParameter(format!(
                        "unknown code {other:?}"
                    )))
                }
            };
            write_or_print(&cli.out, &format!("{codeword}\n"))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Decode(args) => {
            let y: BitWord = args.y.parse()?;
            let mut rng = seed_rng(cli.seed);
            let bit = match args.code.as_str() {
                "spaced" => {
                    let (n, t) = match (args.n, args.t) {
                        (Some(n), Some(t)) => (n, t),
                        _ => {
                            return Err(insdel_lab::Error::InvalidParameter(
                                "spaced decode needs --n and --t".into(),
                            ))
                        }
                    };
                    SpacedHadamardCode::new(n, t)?.decode(&y, args.i, &mut rng)?
                }
                "otp" => {
                    let path = args.key.ok_or_else(|| {
                        insdel_lab::Error::InvalidParameter("otp decode needs --key".into())
                    })?;
                    let key = PrivateKey::from_text(&fs::read_to_string(&path).map_err(|e| {
                        insdel_lab::Error::InvalidParameter(format!("{path}: {e}"))
                    })?)?;
                    otp_decode(&y, args.i, &key, &mut rng)?
                }
                other => {
                    return Err(insdel_lab::Error::InvalidParameter(format!(
                        "unknown code {other:?}"
                    )))
                }
            };
            write_or_print(&cli.out, &format!("{}\n", u8::from(bit)))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Corrupt(args) => {
            let mut rng = seed_rng(cli.seed);
            let word = match &args.word {
                Some(w) => w.parse::<BitWord>()?,
                None => BitWord::uniform(args.m, &mut rng),
            };
            if word.len() != args.m {
                return Err(insdel_lab::Error::InvalidParameter(format!(
                    "word length {} != m = {}",
                    word.len(),
                    args.m
                )));
            }
            let sample: ChannelSample = match args.channel.as_str() {
                "type1" => {
                    let e = args.e.ok_or_else(|| {
                        insdel_lab::Error::InvalidParameter("type1 needs --e".into())
                    })?;
                    corrupt_with(
                        &Type1Channel::new(args.m, e)?,
                        &word,
                        PadPolicy::Uniform,
                        &mut rng,
                    )?
                }
                "two-query" => corrupt_with(
                    &TwoQueryChannel::new(args.m, args.delta)?,
                    &word,
                    PadPolicy::Uniform,
                    &mut rng,
                )?,
                "oblivious" => corrupt_with(
                    &LayeredChannel::new(make_oblivious_spec(args.m, args.delta)?),
                    &word,
                    PadPolicy::Uniform,
                    &mut rng,
                )?,
                "adversarial" => {
                    let path = args.profile.ok_or_else(|| {
                        insdel_lab::Error::InvalidParameter(
                            "adversarial channel needs --profile FILE".into(),
                        )
                    })?;
                    let profile =
                        DecoderQueryProfile::from_json(&fs::read_to_string(&path).map_err(
                            |e| insdel_lab::Error::InvalidParameter(format!("{path}: {e}")),
                        )?)?;
                    let spec = make_adversarial_spec(args.m, args.delta, &profile, args.i)?;
                    corrupt_with(
                        &LayeredChannel::new(spec),
                        &word,
                        PadPolicy::Uniform,
                        &mut rng,
                    )?
                }
                "iid" => {
                    let alpha = args.alpha.ok_or_else(|| {
                        insdel_lab::Error::InvalidParameter("iid needs --alpha".into())
                    })?;
                    corrupt_with(
                        &IidDeletionChannel::new(args.m, alpha)?,
                        &word,
                        PadPolicy::Uniform,
                        &mut rng,
                    )?
                }
                other => {
                    return Err(insdel_lab::Error::InvalidParameter(format!(
                        "unknown channel {other:?}"
                    )))
                }
            };
            let mut out = String::new();
            out.push_str(&format!("corrupted={}\n", sample.corrupted));
            for step in &sample.trace {
                out.push_str(&format!(
                    "trace step={} deleted={}\n",
                    step.step, step.deleted
                ));
            }
            out.push_str(&format!("deletions={}\n", sample.deletions.to_csv_record()));
            write_or_print(&cli.out, &out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Goodsets(args) => {
            let table = match args.code.as_str() {
                "hadamard" => good_sets_bruteforce(hadamard_encode, args.n, args.q, args.epsilon)?,
                "spaced" => {
                    let t = args.t.ok_or_else(|| {
                        insdel_lab::Error::InvalidParameter("spaced code needs --t".into())
                    })?;
                    let code = SpacedHadamardCode::new(args.n, t)?;
                    good_sets_bruteforce(move |x| code.encode(x), args.n, args.q, args.epsilon)?
                }
                other => {
                    return Err(insdel_lab::Error::InvalidParameter(format!(
                        "unknown code {other:?}"
                    )))
                }
            };
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["i", "positions", "advantage"]).unwrap();
            for i in 0..table.n() {
                let mut tuples: Vec<_> = table.good_tuples(i).collect();
                tuples.sort_by_key(|t| t.positions());
                for tuple in tuples {
                    let positions = tuple
                        .positions()
                        .iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(" ");
                    w.write_record([
                        &i.to_string(),
                        &positions,
                        &format!("{}", table.advantage(i, &tuple)),
                    ])
                    .unwrap();
                }
            }
            let csv = String::from_utf8(w.into_inner().unwrap()).unwrap();
            let hq = hq_bound_check(&table);
            let summary = format!(
                "# good tuples per index: {:?}; max |H_Q| = {} (bound {:.3}) => {}\n",
                (0..table.n())
                    .map(|i| table.good_count(i))
                    .collect::<Vec<_>>(),
                hq.max_hq,
                hq.bound,
                if hq.ok { "PASS" } else { "FAIL" }
            );
            write_or_print(&cli.out, &(summary + &csv))?;
            Ok(if hq.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Quad(args) => {
            let text = fs::read_to_string(&args.analyze).map_err(|e| {
                insdel_lab::Error::InvalidParameter(format!("{}: {e}", args.analyze))
            })?;
            let poly = parse_polynomial(text.trim(), None)?;
            let mut out = String::new();
            out.push_str(&format!("polynomial={poly}\n"));
            out.push_str(&format!("variables={}\n", poly.n()));
            let rank = symplectic_rank(&poly);
            out.push_str(&format!("symplectic_rank={rank} (h={})\n", rank / 2));
            let d = symplectic_decompose(&poly);
            for j in 0..d.h {
                out.push_str(&format!(
                    "factor{}=({:?} + {})({:?} + {})\n",
                    j + 1,
                    d.ells[j],
                    u8::from(d.ell_consts[j]),
                    d.rs[j],
                    u8::from(d.r_consts[j]),
                ));
            }
            if let Some(res) = &d.residual {
                out.push_str(&format!("residual_linear={res:?}\n"));
            }
            out.push_str(&format!("b_prime={}\n", u8::from(d.b_prime)));
            out.push_str(&format!("zero_probability={}\n", zero_probability(&poly)));
            if poly.n() <= 24 {
                out.push_str(&format!("zero_count={}\n", zero_count_bruteforce(&poly)?));
            }
            if let Some(i) = args.correlate {
                match correlation_structure(&poly, i, args.epsilon)? {
                    CorrelationStructure::NoCorrelation { bias } => {
                        out.push_str(&format!("correlation_x{}=none (bias {bias})\n", i + 1));
                    }
                    CorrelationStructure::LowRank {
                        bias,
                        h,
                        rank_threshold,
                        ei_in_span,
                        ..
                    } => {
                        out.push_str(&format!(
                            "correlation_x{}=low-rank h={h} (threshold {rank_threshold}) bias={bias} ei_in_span={ei_in_span}\n",
                            i + 1
                        ));
                    }
                }
            }
            write_or_print(&cli.out, &out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(args) => {
            let kind = match args.suite.as_str() {
                "anticoncentration" => "anticoncentration",
                "entropy" => "entropy-bound",
                other => {
                    return Err(insdel_lab::Error::InvalidParameter(format!(
                        "unknown verify suite {other:?} (try anticoncentration or entropy)"
                    )))
                }
            };
            let entry = experiments::list_experiments()
                .into_iter()
                .find(|e| e.kind == kind)
                .expect("catalog entry exists");
            let mut config = entry.default_config(cli.seed);
            config.threads = cli.threads.max(1);
            let report = experiments::run(&config)?;
            finish_report(&cli.out, &report)
        }
        Command::Experiment(args) => {
            let text = fs::read_to_string(&args.config).map_err(|e| {
                insdel_lab::Error::InvalidParameter(format!("{}: {e}", args.config))
            })?;
            let mut config = ExperimentConfig::from_json(&text)?;
            if cli.threads > 1 {
                config.threads = cli.threads;
            }
            let report = experiments::run(&config)?;
            let out = cli.out.clone().or(config.out.clone());
            finish_report(&out, &report)
        }
        Command::List => {
            let mut out = String::new();
            for entry in experiments::list_experiments() {
                let criterion = entry
                    .criterion
                    .map(|c| format!("criterion {c}"))
                    .unwrap_or_else(|| "extra".into());
                out.push_str(&format!(
                    "{:28} [{criterion}] {}\n    default params: {}\n",
                    entry.kind, entry.description, entry.default_params
                ));
            }
            write_or_print(&cli.out, &out)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn finish_report(out: &Option<String>, report: &RunReport) -> insdel_lab::Result<ExitCode> {
    print!("{}", report.summary());
    if let Some(path) = out {
        fs::write(path, report.csv_string())
            .map_err(|e| insdel_lab::Error::InvalidParameter(format!("writing {path}: {e}")))?;
        println!("# csv written to {path}");
    } else {
        print!("{}", report.csv_string());
    }
    Ok(if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}
