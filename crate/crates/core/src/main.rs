use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use isospec::corpus::standard_corpus;
use isospec::graph_model::io::{parse_map, to_document, ChainDocument};
use isospec::homomorphism::{
    comparison_check, comparison_constants, courant_hilbert_check, courant_hilbert_identity, no_hom_verdict,
    validate_hom, CourantHilbert, HomClass, OntoMode,
};
use isospec::isoperimetry::{
    isoperimetric_constant, report_from_table, supergeometric_classify, RatioTable, DEFAULT_CAP,
};
use isospec::nodal::{
    bipolar_part_check, cheeger_suite, cheeger_upper, compatible_set_search, duval_reiner_bound, gen_cheeger_probe,
    sign_decomposition, Connectivity, Polarity,
};
use isospec::probes::{circulant_probe, complete_graph_table, gen_cheeger_findings, three_clique_probe};
use isospec::report::{float, floats, scalar, scalars, sets, RunReport};
use isospec::scalar::parse_rational;
use isospec::spectral::spectrum;
use isospec::{Error, MarkovChain, Mode, Rational, Result, Scalar};

#[derive(Parser)]
#[command(name = "isospec", version, about = "Isoperimetric and Laplacian spectra of Markov chains on digraphs")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Global {
    /// Emit the structured JSON report.
    #[arg(long, global = true)]
    json: bool,
    /// Write the report to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Force the exact rational backend.
    #[arg(long, global = true, conflicts_with = "float")]
    exact: bool,
    /// Force the floating point backend.
    #[arg(long, global = true)]
    float: bool,
    /// Largest vertex count for subset enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Worker threads for corpus sweeps.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalues and eigenfunctions of the Laplacian.
    Spectrum { file: PathBuf },
    /// The isoperimetric constant for one n.
    Iso {
        file: PathBuf,
        #[arg(short)]
        n: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Disjoint)]
        mode: ModeArg,
    },
    /// Compare disjoint and partition constants for n = 2..=max-n.
    Supergeometric {
        file: PathBuf,
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Cheeger-type bounds between the mean spectrum and the isoperimetric spectrum.
    Cheeger {
        file: PathBuf,
        #[arg(short)]
        n: usize,
    },
    /// Sign-graphs and nodal checks for one eigenfunction.
    Nodal {
        file: PathBuf,
        #[arg(long)]
        eigen: usize,
    },
    /// Comparison constants and checks for a homomorphism.
    Compare {
        g: PathBuf,
        h: PathBuf,
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        check: bool,
    },
    /// Exhaustive search for onto homomorphisms.
    Nohom {
        g: PathBuf,
        h: PathBuf,
        #[arg(long, value_enum, default_value_t = OntoArg::VertexOnto)]
        mode: OntoArg,
        /// Upper bound on M/S for the spectral obstruction.
        #[arg(long)]
        ratio: Option<String>,
        #[arg(long, default_value_t = 1e8)]
        max_maps: f64,
    },
    /// Experiments recorded as findings.
    #[command(subcommand)]
    Probe(Probe),
    /// Write the standard corpus as graph documents into DIR.
    Corpus { dir: PathBuf },
}

#[derive(Subcommand)]
enum Probe {
    ThreeClique {
        #[arg(long, default_value = "2..3")]
        sweep: String,
    },
    Circulant {
        #[arg(long)]
        order: usize,
        #[arg(long, value_delimiter = ',')]
        connections: Vec<usize>,
    },
    Gencheeger {
        /// Graph documents; the standard corpus when omitted.
        files: Vec<PathBuf>,
    },
    CompleteGraphs {
        #[arg(long, default_value = "3..7")]
        sweep: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Disjoint,
    Partition,
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum OntoArg {
    VertexOnto,
    EdgeOnto,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let argv: Vec<String> = std::env::args().skip(1).collect();
    match run(&cli, argv) {
        Ok(report) => {
            let text = if cli.global.json { report.to_json() } else { report.to_text() };
            let written = match &cli.global.out {
                Some(path) => fs::write(path, text).map_err(Error::from),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            match written {
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
                Ok(()) if report.passed() => ExitCode::SUCCESS,
                Ok(()) => ExitCode::from(1),
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

struct Loaded {
    doc: ChainDocument,
    bytes: Vec<u8>,
}

fn load(path: &Path) -> Result<Loaded> {
    let bytes = fs::read(path)?;
    let text = String::from_utf8(bytes.clone()).map_err(|e| Error::Parse(e.to_string()))?;
    Ok(Loaded { doc: ChainDocument::parse(&text)?, bytes })
}

impl Global {
    fn use_float(&self, doc: &ChainDocument) -> bool {
        self.float || (!self.exact && doc.has_float_entries())
    }
}

/// Runs `$body` with `$chain` bound to the backend selected by the flags.
macro_rules! with_backend {
    ($g:expr, $doc:expr, |$chain:ident| $body:expr) => {
        if $g.use_float($doc) {
            let $chain = $doc.float()?;
            $body
        } else {
            let $chain = $doc.exact()?;
            $body
        }
    };
}

fn run(cli: &Cli, argv: Vec<String>) -> Result<RunReport> {
    let g = &cli.global;
    let mut report = RunReport::new(argv);
    match &cli.command {
        Command::Spectrum { file } => {
            let l = load(file)?;
            report.input(file.display().to_string(), &l.bytes);
            let s = with_backend!(g, &l.doc, |c| spectrum(&c)?);
            report.set("lambdas", floats(&s.lambdas));
            report.set("alphas", floats(&s.alphas));
            report.set("mean_lambdas", floats(&s.mean_lambdas));
            report.set("eigenbasis", Value::Array(s.eigenbasis.iter().map(|f| floats(f)).collect()));
            report.set("degenerate", json!(s.degenerate));
            report.set("sweeps", json!(s.sweeps));
        }
        Command::Iso { file, n, mode } => {
            let l = load(file)?;
            report.input(file.display().to_string(), &l.bytes);
            let mode = match mode {
                ModeArg::Disjoint => Mode::Disjoint,
                ModeArg::Partition => Mode::Partition,
            };
            with_backend!(g, &l.doc, |c| {
                let v = isoperimetric_constant(&c, *n, mode, g.cap)?;
                report.set("n", json!(v.n));
                report.set("mode", json!(v.mode));
                report.set("iota", scalar(&v.value));
                report.set("witness", sets(&v.witness.classes));
                report.set("families_examined", json!(v.families_examined));
            });
        }
        Command::Supergeometric { file, max_n } => {
            let l = load(file)?;
            report.input(file.display().to_string(), &l.bytes);
            let vcount = l.doc.graph.vertex_count();
            with_backend!(g, &l.doc, |c| {
                let r = supergeometric_classify(&c, max_n.unwrap_or(vcount), g.cap)?;
                let rows: Vec<Value> = r
                    .rows
                    .iter()
                    .map(|row| {
                        json!({
                            "n": row.n,
                            "iota": scalar(&row.iota),
                            "iota_tilde": scalar(&row.iota_tilde),
                            "witness": sets(&row.witness.classes),
                            "witness_tilde": sets(&row.witness_tilde.classes),
                        })
                    })
                    .collect();
                report.set("rows", Value::Array(rows));
                report.set("geometric_up_to_max_n", json!(r.geometric_up_to_max_n));
                report.set("supergeometric", json!(r.supergeometric));
            });
        }
        Command::Cheeger { file, n } => {
            let l = load(file)?;
            report.input(file.display().to_string(), &l.bytes);
            with_backend!(g, &l.doc, |c| cheeger(&mut report, &c, *n, g.cap)?);
        }
        Command::Nodal { file, eigen } => {
            let l = load(file)?;
            report.input(file.display().to_string(), &l.bytes);
            with_backend!(g, &l.doc, |c| nodal(&mut report, &c, *eigen, g.cap)?);
        }
        Command::Compare { g: gp, h: hp, map, check } => {
            let (lg, lh) = (load(gp)?, load(hp)?);
            let map_bytes = fs::read(map)?;
            report.input(gp.display().to_string(), &lg.bytes);
            report.input(hp.display().to_string(), &lh.bytes);
            report.input(map.display().to_string(), &map_bytes);
            let text = String::from_utf8(map_bytes).map_err(|e| Error::Parse(e.to_string()))?;
            let sigma = parse_map(&text, &lg.doc.graph, &lh.doc.graph)?;
            let floaty = g.use_float(&lg.doc) || g.use_float(&lh.doc);
            if floaty {
                compare(&mut report, &lg.doc.float()?, &lh.doc.float()?, &sigma, *check, g.cap)?;
            } else {
                compare(&mut report, &lg.doc.exact()?, &lh.doc.exact()?, &sigma, *check, g.cap)?;
            }
        }
        Command::Nohom { g: gp, h: hp, mode, ratio, max_maps } => {
            let (lg, lh) = (load(gp)?, load(hp)?);
            report.input(gp.display().to_string(), &lg.bytes);
            report.input(hp.display().to_string(), &lh.bytes);
            let mode = match mode {
                OntoArg::VertexOnto => OntoMode::VertexOnto,
                OntoArg::EdgeOnto => OntoMode::EdgeOnto,
            };
            let ratio = ratio.as_deref().map(parse_rational).transpose()?;
            let v = no_hom_verdict(&lg.doc.exact()?, &lh.doc.exact()?, mode, ratio.as_ref(), *max_maps)?;
            report.set("exists", json!(v.witness.is_some()));
            report.set("witness", json!(v.witness));
            report.set("obstruction_k", json!(v.obstruction));
            report.checks.push(isospec::check::Check::new(
                "certificate soundness",
                v.certificate_sound,
                "spectral obstruction never coexists with a map",
            ));
        }
        Command::Probe(p) => probe(&mut report, p, g)?,
        Command::Corpus { dir } => {
            fs::create_dir_all(dir)?;
            let corpus = standard_corpus();
            for e in &corpus {
                let chain = MarkovChain::<Rational>::natural_walk(&e.graph)?;
                fs::write(dir.join(format!("{}.json", e.name)), to_document(&chain) + "\n")?;
            }
            report.set("written", json!(corpus.len()));
        }
    }
    Ok(report)
}

fn cheeger<S: Scalar>(report: &mut RunReport, c: &MarkovChain<S>, n: usize, cap: usize) -> Result<()> {
    let v = c.vertex_count();
    if n == 0 || n > v {
        return Err(Error::OutOfRange { n, max: v });
    }
    let cf = c.to_f64();
    let s = spectrum(&cf)?;
    let table = RatioTable::new(c, cap)?;
    let iota: Vec<S> = (1..=v).map(|k| report_from_table(&table, k).map(|r| r.iota)).collect::<Result<_>>()?;
    let iota_f: Vec<f64> = iota.iter().map(Scalar::to_f64).collect();
    report.set("iota", scalars(&iota));
    report.set("mean_lambdas", floats(&s.mean_lambdas));
    report.extend_checks(cheeger_suite(cf.graph(), &s, &iota_f));
    if n >= 2 {
        match compatible_set_search(&cf, &s, n) {
            Some(cs) => {
                report.set("compatible_parts", sets(&cs.parts));
                report.checks.push(cheeger_upper(&cf, &cs, &iota_f[n - 1])?);
            }
            None => report.set("compatible_parts", Value::Null),
        }
        report.findings.push(gen_cheeger_probe(&cf, &s, n, iota_f[n - 1]));
    }
    Ok(())
}

fn nodal<S: Scalar>(report: &mut RunReport, c: &MarkovChain<S>, k: usize, cap: usize) -> Result<()> {
    let v = c.vertex_count();
    if k == 0 || k > v {
        return Err(Error::OutOfRange { n: k, max: v });
    }
    let cf = c.to_f64();
    let s = spectrum(&cf)?;
    let f = s.eigenfunction(k);
    let d = sign_decomposition(cf.graph(), f, Connectivity::Undirected);
    let strong = sign_decomposition(cf.graph(), f, Connectivity::Strong);
    report.set("lambda", float(s.lambda(k)));
    report.set("degenerate", json!(s.degenerate[k - 1]));
    report.set("eigenfunction", floats(f));
    report.set("positive_components", sets(&d.positive_components));
    report.set("negative_components", sets(&d.negative_components));
    report.set("kappa", json!({"plus": d.kappa_plus, "minus": d.kappa_minus, "total": d.kappa}));
    report.set("kappa_strong", json!({"plus": strong.kappa_plus, "minus": strong.kappa_minus, "total": strong.kappa}));
    let table = RatioTable::new(c, cap)?;
    let iota: Vec<f64> =
        (1..=v).map(|n| report_from_table(&table, n).map(|r| r.iota.to_f64())).collect::<Result<_>>()?;
    let identity = courant_hilbert_identity(&cf, &s);
    report.extend_checks(identity.into_iter().filter(|ch| ch.name.ends_with(&format!("k={k}"))));
    report.extend_checks(cheeger_suite(cf.graph(), &s, &iota).into_iter().filter(|ch| ch.name == format!("sign-graph cheeger k={k}")));
    for q in d.sign_graphs() {
        if bipolar_part_check(cf.graph(), f, q) == Polarity::Neither {
            continue;
        }
        let b = duval_reiner_bound(&cf, f, &s.lambda(k), q)?;
        report.checks.push(isospec::check::Check::new(
            format!("rayleigh bound on {q}"),
            b.holds,
            format!("{} >= {}", b.zeta.render(), b.rayleigh.render()),
        ));
    }
    Ok(())
}

fn compare<S: Scalar>(
    report: &mut RunReport,
    cg: &MarkovChain<S>,
    ch: &MarkovChain<S>,
    sigma: &[usize],
    check: bool,
    cap: usize,
) -> Result<()> {
    let w = validate_hom(cg.graph(), ch.graph(), sigma)?;
    report.set("class", json!(w.class));
    report.set("map", json!(w.map));
    if w.class < HomClass::Hom {
        return Ok(());
    }
    let k = comparison_constants(cg, ch, &w)?;
    report.set(
        "constants",
        json!({
            "m_sigma": k.m_sigma, "m_sup": k.m_sup, "s_sigma": k.s_sigma, "s_sup": k.s_sup,
            "tau_gh": scalar(&k.tau_gh), "tau_hg": scalar(&k.tau_hg),
            "factor_upper": scalar(&k.factor_upper()), "factor_lower": scalar(&k.factor_lower()),
        }),
    );
    if !check {
        return Ok(());
    }
    if w.class >= HomClass::OntoVertex {
        report.extend_checks(comparison_check(cg, ch, &w, cap)?);
    }
    let (gf, hf) = (cg.to_f64(), ch.to_f64());
    let sh = spectrum(&hf)?;
    for j in 1..=hf.vertex_count() {
        let f = sh.eigenfunction(j);
        let mut run = |theorem: CourantHilbert, zeta: f64| match courant_hilbert_check(&gf, &hf, &w, f, &zeta, theorem) {
            Ok(mut c) => {
                c.name = format!("{} (f{j})", c.name);
                report.checks.push(c);
            }
            Err(Error::Precondition(_)) => {}
            Err(e) => report.findings.push(isospec::check::Finding {
                name: format!("courant-hilbert f{j}"),
                holds: None,
                detail: e.to_string(),
            }),
        };
        run(CourantHilbert::Excessive, sh.lambda(j));
        run(CourantHilbert::DeficientA, sh.alpha(j));
        run(CourantHilbert::DeficientB, sh.alpha(j));
    }
    Ok(())
}

fn parse_range(text: &str) -> Result<std::ops::RangeInclusive<usize>> {
    let (a, b) = text.split_once("..").ok_or_else(|| Error::Parse(format!("range `{text}` is not A..B")))?;
    let num = |s: &str| s.trim_start_matches('=').parse::<usize>().map_err(|e| Error::Parse(e.to_string()));
    Ok(num(a)?..=num(b)?)
}

fn probe(report: &mut RunReport, p: &Probe, g: &Global) -> Result<()> {
    match p {
        Probe::ThreeClique { sweep } => {
            let rows = three_clique_probe(parse_range(sweep)?, g.cap)?;
            let out: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "m": r.m, "pi_y": scalar(&r.pi_y), "pi_y_matches": r.pi_y_matches,
                        "iota3": scalar(&r.iota3), "iota3_tilde": scalar(&r.iota3_tilde),
                        "strict_gap": r.strict_gap, "iota3_times_m2": scalar(&r.scaled),
                        "witness": sets(&r.witness), "blocks_witness": r.blocks_witness,
                    })
                })
                .collect();
            report.set("rows", Value::Array(out));
            for r in &rows {
                report.checks.push(isospec::check::Check::new(
                    format!("centre measure m={}", r.m),
                    r.pi_y_matches,
                    r.pi_y.render(),
                ));
            }
        }
        Probe::Circulant { order, connections } => {
            let (finding, _) = circulant_probe(*order, connections, g.cap)?;
            report.findings.push(finding);
        }
        Probe::CompleteGraphs { sweep } => {
            let (rows, finding) = complete_graph_table(parse_range(sweep)?, g.cap)?;
            let out: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({"n": r.n, "t": r.t, "iota": scalar(&r.iota), "iota_tilde": scalar(&r.iota_tilde),
                           "formula": scalar(&r.formula), "printed": scalar(&r.printed)})
                })
                .collect();
            report.set("rows", Value::Array(out));
            for r in &rows {
                report.checks.push(isospec::check::Check::new(
                    format!("K_{} t={}", r.n, r.t),
                    r.matches_formula(),
                    r.iota.render(),
                ));
            }
            report.findings.push(finding);
        }
        Probe::Gencheeger { files } => {
            let chains: Vec<(String, MarkovChain<Rational>)> = if files.is_empty() {
                standard_corpus()
                    .into_iter()
                    .filter(|e| e.graph.vertex_count() <= g.cap)
                    .map(|e| Ok((e.name, MarkovChain::natural_walk(&e.graph)?)))
                    .collect::<Result<_>>()?
            } else {
                files
                    .iter()
                    .map(|f| {
                        let l = load(f)?;
                        report.input(f.display().to_string(), &l.bytes);
                        Ok((f.display().to_string(), l.doc.exact()?))
                    })
                    .collect::<Result<_>>()?
            };
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(g.jobs.unwrap_or(0))
                .build()
                .map_err(|e| Error::Io(e.to_string()))?;
            let results: Vec<Result<Vec<isospec::check::Finding>>> =
                pool.install(|| chains.par_iter().map(|(_, c)| gen_cheeger_findings(c, g.cap)).collect());
            for ((name, _), found) in chains.iter().zip(results) {
                for mut f in found? {
                    f.name = format!("{name}: {}", f.name);
                    report.findings.push(f);
                }
            }
            let count = |v: Option<bool>| report.findings.iter().filter(|f| f.holds == v).count();
            let tally = json!({"holds": count(Some(true)), "fails": count(Some(false)), "unmet": count(None)});
            report.set("tally", tally);
        }
    }
    Ok(())
}
