use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use wordmap::cache::{self, Stage};
use wordmap::pipeline::{require_simple, with_workers};
use wordmap::realize::{certify_image, Verdict};
use wordmap::report::*;
use wordmap::search::{census, default_maxlen, distribution, distribution_distance, CensusOptions};
use wordmap::spec::catalog;
use wordmap::{
    build_group, classify_pairs, compute_automorphisms, hall_rank, validate_simple,
    verify_free_action, Analysis, Error, GroupSpec, Word, DEFAULT_ORDER_CAP,
};

/// Word-map images on small finite simple groups.
#[derive(Parser, Debug)]
#[command(name = "wordmap", version)]
struct Cli {
    /// Directory for reports and caches; each group gets a subdirectory.
    #[arg(
        long,
        global = true,
        env = "WORDMAP_OUT",
        default_value = "wordmap-out"
    )]
    out: PathBuf,

    /// Worker threads. Never affects results.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,

    /// Largest group order accepted.
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER_CAP)]
    order_cap: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a group, check it is simple, and cache its table.
    Group(GroupArgs),
    /// Compute Aut(G) and its orbits on elements.
    Aut(GroupRef),
    /// Classify generating pairs and check the orbit-count identity.
    Pairs(GroupRef),
    /// Write a generating mate for every non-identity element.
    Spread(GroupRef),
    /// Certify a candidate image set.
    Certify(CertifyArgs),
    /// Search short words and record the images they realize.
    Census(CensusArgs),
    /// Value distribution of one word.
    Dist(DistArgs),
    /// Re-validate a stored certificate from scratch.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    Alternating,
    Psl2,
}

#[derive(Args, Debug)]
struct GroupArgs {
    #[arg(long, conflicts_with_all = ["spec", "catalog"], requires = "family_param")]
    family: Option<Family>,
    #[arg(long, group = "family_param")]
    n: Option<usize>,
    #[arg(long, group = "family_param")]
    p: Option<usize>,
    /// Group-spec JSON file.
    #[arg(long, conflicts_with = "catalog")]
    spec: Option<PathBuf>,
    /// Built-in group: a5, a6, a7, psl2_7, psl2_11.
    #[arg(long)]
    catalog: Option<String>,
    /// Override the group's name (and so its output subdirectory).
    #[arg(long)]
    name: Option<String>,
}

#[derive(Args, Debug)]
struct GroupRef {
    /// Group name, as written by `wordmap group`.
    #[arg(long)]
    group: String,
}

#[derive(Args, Debug)]
struct CertifyArgs {
    #[command(flatten)]
    group: GroupRef,
    /// Union of orbit labels, e.g. "e,o3x20"; "all" names G.
    #[arg(long, conflicts_with = "ids", required_unless_present = "ids")]
    set: Option<String>,
    /// Explicit element ids, e.g. "0,5,7".
    #[arg(long)]
    ids: Option<String>,
    /// Where to write the certificate (default: <out>/<group>/certificate.json).
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CensusArgs {
    #[command(flatten)]
    group: GroupRef,
    /// Longest word searched (default scales with the group).
    #[arg(long)]
    maxlen: Option<usize>,
    /// Wall-clock budget in seconds; a partial census is flagged as such.
    #[arg(long)]
    budget_secs: Option<u64>,
    /// Continue the partial census stored in the output directory.
    #[arg(long)]
    resume: bool,
}

#[derive(Args, Debug)]
struct DistArgs {
    #[command(flatten)]
    group: GroupRef,
    /// Word over x, X, y, Y (capitals are inverses).
    #[arg(long)]
    word: String,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    group: GroupRef,
    #[arg(long)]
    certificate: PathBuf,
}

/// Outcome classes, mapped onto exit codes 0-3.
enum Fail {
    Negative(String),
    Input(String),
    Alarm(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::Inconsistency(_) => Fail::Alarm(e.to_string()),
            Error::NotSimple(_) => Fail::Negative(e.to_string()),
            _ => Fail::Input(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Fail {
    fn from(e: std::io::Error) -> Self {
        Fail::Input(e.to_string())
    }
}

type CmdResult = Result<(), Fail>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let workers = cli.workers;
    let result = with_workers(workers, || run(&cli));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Negative(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Fail::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Fail::Alarm(msg)) => {
            eprintln!("INTERNAL INCONSISTENCY: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Group(args) => cmd_group(cli, args),
        Command::Aut(g) => cmd_aut(cli, g),
        Command::Pairs(g) => cmd_pairs(cli, g),
        Command::Spread(g) => cmd_spread(cli, g),
        Command::Certify(args) => cmd_certify(cli, args),
        Command::Census(args) => cmd_census(cli, args),
        Command::Dist(args) => cmd_dist(cli, args),
        Command::Verify(args) => cmd_verify(cli, args),
    }
}

fn group_dir(cli: &Cli, name: &str) -> PathBuf {
    cli.out.join(name)
}

fn write_file(dir: &Path, name: &str, bytes: &[u8]) -> CmdResult {
    fs::create_dir_all(dir)?;
    fs::write(dir.join(name), bytes)?;
    Ok(())
}

fn cmd_group(cli: &Cli, args: &GroupArgs) -> CmdResult {
    let mut spec = if let Some(family) = args.family {
        match family {
            Family::Alternating => GroupSpec::alternating(
                args.n
                    .ok_or_else(|| Fail::Input("--family alternating needs --n".into()))?,
            ),
            Family::Psl2 => GroupSpec::psl2(
                args.p
                    .ok_or_else(|| Fail::Input("--family psl2 needs --p".into()))?,
            ),
        }
    } else if let Some(path) = &args.spec {
        let text = fs::read_to_string(path)
            .map_err(|e| Fail::Input(format!("{}: {e}", path.display())))?;
        GroupSpec::from_json_str(&text)?
    } else if let Some(name) = &args.catalog {
        catalog(name).ok_or_else(|| Fail::Input(format!("unknown catalog group {name:?}")))?
    } else {
        return Err(Fail::Input("give --family, --spec or --catalog".into()));
    };
    if let Some(name) = &args.name {
        spec.name = name.clone();
    }
    let g = build_group(&spec, cli.order_cap)?;
    let simplicity = validate_simple(&g);
    let summary = group_summary(&g, &simplicity);
    let dir = group_dir(cli, &spec.name);
    write_file(&dir, "group.json", &to_json_bytes(&summary)?)?;
    println!("{}: order {}, degree {}", g.name(), g.order(), g.degree());
    for oc in &summary.order_histogram {
        println!("  elements of order {:>3}: {}", oc.order, oc.count);
    }
    require_simple(&g)?;
    cache::write(&dir, Stage::Group, &cache::encode_group(&g))?;
    println!("simple; cached in {}", dir.display());
    Ok(())
}

fn missing(stage: Stage, name: &str) -> Fail {
    let hint = match stage {
        Stage::Group => {
            format!("wordmap group --catalog {name}  (or --family/--spec with --name {name})")
        }
        Stage::Aut => format!("wordmap aut --group {name}"),
        Stage::Pairs => format!("wordmap pairs --group {name}"),
    };
    Fail::Input(format!(
        "no {} cache for {name:?}; run `{hint}` first",
        stage.file_name()
    ))
}

fn load_stage(cli: &Cli, name: &str, stage: Stage) -> Result<Vec<u8>, Fail> {
    cache::read(&group_dir(cli, name), stage)?.ok_or_else(|| missing(stage, name))
}

fn load_group(cli: &Cli, name: &str) -> Result<wordmap::GroupTable, Fail> {
    Ok(cache::decode_group(&load_stage(cli, name, Stage::Group)?)?)
}

fn load_analysis(cli: &Cli, name: &str) -> Result<Analysis, Fail> {
    let g = load_group(cli, name)?;
    let aut = cache::decode_aut(&g, &load_stage(cli, name, Stage::Aut)?)?;
    let pc = cache::decode_pairs(&g, &aut, &load_stage(cli, name, Stage::Pairs)?)?;
    Ok(Analysis::from_parts(g, aut, pc)?)
}

fn cmd_aut(cli: &Cli, r: &GroupRef) -> CmdResult {
    let g = load_group(cli, &r.group)?;
    let aut = compute_automorphisms(&g)?;
    let pc = classify_pairs(&g, &aut)?;
    let an = Analysis::from_parts(g, aut, pc)?;
    let report = aut_report(&an);
    let dir = group_dir(cli, &r.group);
    write_file(&dir, "aut.json", &to_json_bytes(&report)?)?;
    cache::write(&dir, Stage::Aut, &cache::encode_aut(&an.group, &an.aut))?;
    let labels = orbit_labels(&an.group, &an.elem_orbits);
    println!(
        "|Aut| = {}, |Inn| = {}",
        report.aut_order, report.inner_order
    );
    for (o, label) in report.element_orbits.iter().zip(&labels) {
        println!("  {label:<12} size {:>5}  rep {:>5}", o.size, o.rep);
    }
    Ok(())
}

fn cmd_pairs(cli: &Cli, r: &GroupRef) -> CmdResult {
    let g = load_group(cli, &r.group)?;
    let aut = cache::decode_aut(&g, &load_stage(cli, &r.group, Stage::Aut)?)?;
    let pc = classify_pairs(&g, &aut)?;
    let an = Analysis::from_parts(g, aut, pc)?;
    let report = pairs_report(&an);
    let dir = group_dir(cli, &r.group);
    write_file(&dir, "pairs.json", &to_json_bytes(&report)?)?;
    cache::write(&dir, Stage::Pairs, &cache::encode_pairs(&an.pairs))?;
    println!(
        "ell = {}, r = {}, |Aut| = {}, r*|Aut| = ell: {}",
        report.ell, report.r, report.aut_order, report.hall_consistent
    );
    if !hall_rank(&an.pairs, &an.aut).consistent {
        return Err(Fail::Alarm(
            "ell / |Aut| disagrees with the orbit count".into(),
        ));
    }
    if let Err(f) = verify_free_action(&an.aut, &an.pairs.generating_pairs()) {
        return Err(Fail::Alarm(format!(
            "automorphism {} fixes generating pair {:?}",
            f.alpha, f.pair
        )));
    }
    println!("free action on generating pairs: ok");
    an.spread_certificate()?;
    println!("spread: every non-identity element has a generating mate");
    Ok(())
}

fn cmd_spread(cli: &Cli, r: &GroupRef) -> CmdResult {
    let an = load_analysis(cli, &r.group)?;
    let report = spread_report(&an);
    write_file(
        &group_dir(cli, &r.group),
        "spread.json",
        &to_json_bytes(&report)?,
    )?;
    match report.missing {
        None => {
            println!("spread total: {} witnesses", report.witnesses.len());
            Ok(())
        }
        Some(a) => Err(Fail::Alarm(format!("element {a} has no generating mate"))),
    }
}

fn cmd_certify(cli: &Cli, args: &CertifyArgs) -> CmdResult {
    let an = load_analysis(cli, &args.group.group)?;
    let set = match (&args.set, &args.ids) {
        (Some(s), _) => parse_named_set(&an.group, &an.elem_orbits, s)?,
        (None, Some(ids)) => parse_id_set(&an.group, ids)?,
        (None, None) => return Err(Fail::Input("give --set or --ids".into())),
    };
    let cert = certify_image(
        &an.aut,
        &an.elem_orbits,
        &an.pairs,
        an.spread_certificate()?,
        &set,
    )?;
    let json = CertificateJson::from(&cert);
    let bytes = to_json_bytes(&json)?;
    match &args.output {
        Some(path) => fs::write(path, &bytes)?,
        None => write_file(
            &group_dir(cli, &args.group.group),
            "certificate.json",
            &bytes,
        )?,
    }
    match cert.verdict {
        Verdict::Realizable => {
            println!(
                "realizable: |A| = {}, {} orbit witnesses, z non-identity on {} generating pairs, equivariance ok",
                cert.set.len(),
                cert.witnesses.len(),
                cert.z_support
            );
            Ok(())
        }
        Verdict::Rejected => Err(Fail::Negative(format!(
            "rejected: {}",
            cert.failed.map(|f| f.to_string()).unwrap_or_default()
        ))),
    }
}

fn cmd_census(cli: &Cli, args: &CensusArgs) -> CmdResult {
    let an = load_analysis(cli, &args.group.group)?;
    let dir = group_dir(cli, &args.group.group);
    let mut previous = None;
    let mut resume_from = 0;
    let mut maxlen = args.maxlen.unwrap_or_else(|| default_maxlen(&an.search));
    if args.resume {
        let meta: CensusMeta = serde_json::from_slice(&fs::read(dir.join("census_meta.json"))?)
            .map_err(|e| Fail::Input(format!("census_meta.json: {e}")))?;
        let entries: Vec<CensusEntry> = serde_json::from_slice(&fs::read(dir.join("census.json"))?)
            .map_err(|e| Fail::Input(format!("census.json: {e}")))?;
        match meta.next_task {
            None => {
                println!("census at maxlen {} is already complete", meta.maxlen);
                return Ok(());
            }
            Some(t) => resume_from = t,
        }
        maxlen = meta.maxlen;
        previous = Some((census_from_entries(&an, &entries)?, meta.classes_searched));
    }
    let opts = CensusOptions {
        maxlen,
        budget: args.budget_secs.map(Duration::from_secs),
        resume_from,
    };
    let mut c = census(&an.group, &an.aut, &an.search, &opts)?;
    if let Some((records, searched)) = previous {
        // Probes are not persisted across partial runs.
        let mut prior = wordmap::Census {
            maxlen,
            records,
            classes_searched: searched,
            tasks_total: c.tasks_total,
            next_task: None,
            generation_probe: None,
            uniform_probe: None,
        };
        let next = c.next_task;
        prior.merge(c);
        prior.next_task = next;
        c = prior;
    }
    write_file(
        &dir,
        "census.json",
        &to_json_bytes(&census_entries(&an, &c))?,
    )?;
    let meta = census_meta(&an, &c);
    write_file(&dir, "census_meta.json", &to_json_bytes(&meta)?)?;
    println!(
        "{} classes up to length {}: {} distinct images of {} admissible sets{}",
        c.classes_searched,
        maxlen,
        c.records.len(),
        meta.admissible_sets
            .map(|k| k.to_string())
            .unwrap_or_else(|| "?".into()),
        if c.is_complete() {
            ""
        } else {
            " (PARTIAL: rerun with --resume)"
        }
    );
    for e in census_entries(&an, &c) {
        println!(
            "  {:>6} elements  len {:>2}  {:<16} {}",
            e.size,
            e.min_length,
            e.min_word,
            e.orbit_signature.join(",")
        );
    }
    Ok(())
}

fn cmd_dist(cli: &Cli, args: &DistArgs) -> CmdResult {
    let an = load_analysis(cli, &args.group.group)?;
    let w: Word = args.word.parse()?;
    let d = distribution(&an.group, &an.search, &w)?;
    let name = format!("dist_{w}.csv");
    write_file(
        &group_dir(cli, &args.group.group),
        &name,
        distribution_csv(&an.elem_orbits, &d).as_bytes(),
    )?;
    let n = an.group.order();
    let dev = distribution_distance(&d, &vec![1.0 / n as f64; n], &an.elem_orbits)?;
    println!("wrote {name}; max deviation from uniform: {dev:.6}");
    Ok(())
}

fn cmd_verify(cli: &Cli, args: &VerifyArgs) -> CmdResult {
    let an = load_analysis(cli, &args.group.group)?;
    let text = fs::read(&args.certificate)?;
    let stored: CertificateJson = serde_json::from_slice(&text)
        .map_err(|e| Fail::Input(format!("{}: {e}", args.certificate.display())))?;
    let problems = verify_certificate(&an, &stored)?;
    if problems.is_empty() {
        println!("certificate re-validates ({:?})", stored.verdict);
        Ok(())
    } else {
        Err(Fail::Negative(format!(
            "certificate does not re-validate:\n  {}",
            problems.join("\n  ")
        )))
    }
}
