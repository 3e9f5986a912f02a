use clap::{Args, Parser, Subcommand, ValueEnum};
use cyclo::catalog;
use cyclo::equiv::{are_equivalent, canonical_form, find_embedding, EquivFlags};
use cyclo::graph::HGraph;
use cyclo::poly::{mahler_measure, IntPoly};
use cyclo::ring::{QuadInt, RingId};
use cyclo::search::{self, GrowConfig, GrowOptions};
use cyclo::spectra;
use cyclo::{Error, Result};
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "cyclo", version, about = "Cyclotomic Hermitian matrices over Z, Z[i] and Z[w]")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Report cyclotomicity, maximality and whether A^2 = 4I
    Check { file: PathBuf },
    /// Print the characteristic polynomial
    Charpoly { file: PathBuf },
    /// Mahler measure of z^n chi(z + 1/z), or of a polynomial given with --poly
    Mahler {
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long)]
        poly: Option<String>,
    },
    /// Canonical key and representative
    Canon {
        file: PathBuf,
        #[arg(long)]
        strong: bool,
    },
    /// Test whether two graphs are equivalent
    Equiv {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        strong: bool,
    },
    /// Test whether G has an induced subgraph equivalent to H
    Contains { g: PathBuf, h: PathBuf },
    /// List or print named graphs
    #[command(subcommand)]
    Catalog(CatalogCmd),
    /// Grow connected cyclotomic graphs avoiding an exclusion list
    Grow(GrowArgs),
    /// Exhaustive closure and classification checks
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Convert a graph file to another format
    Export {
        file: PathBuf,
        #[arg(long)]
        dot: bool,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    /// List every name
    List,
    /// Print a named graph
    Emit {
        name: String,
        #[arg(long)]
        param: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Args)]
struct GrowArgs {
    #[arg(long)]
    ring: String,
    /// `units`, `norm2`, `all` or a comma-separated list
    #[arg(long)]
    weights: String,
    /// Comma-separated, e.g. `0,1,-1`
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    charges: String,
    /// L1, L2, L3, Lw_uncharged, Lw_charged or none
    #[arg(long, default_value = "none")]
    exclusions: String,
    #[arg(long)]
    max_n: usize,
    /// Seed graph files; defaults to one uncharged vertex
    #[arg(long)]
    seed: Vec<PathBuf>,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    resume: bool,
    #[arg(long)]
    limit: Option<usize>,
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Closure of an excluded graph against its table row
    Type2 {
        #[arg(long)]
        excluded: String,
        #[arg(long)]
        table: String,
        /// Replace the row's maximals (comma-separated names)
        #[arg(long)]
        maximals: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Enumerate and check every connected cyclotomic graph up to a size
    Classification {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        resume: bool,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Closures of weight-2 and 1+w edges
    HeavyEdges {
        #[arg(long, default_value = "Zw")]
        ring: String,
    },
    /// Every row of the containment tables, with each maximal dropped in turn
    Tables {
        #[arg(long)]
        table: Option<String>,
        #[arg(long)]
        jobs: Option<usize>,
    },
}

fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(std::fs::read_to_string(path)?)
    }
}

fn read_graph(path: &Path) -> Result<HGraph> {
    Ok(serde_json::from_str(&read_input(path)?)?)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn verdict(b: bool) -> ExitCode {
    if b {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn set_jobs(jobs: Option<usize>) {
    if let Some(n) = jobs {
        // fails only if the pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn flags(strong: bool) -> EquivFlags {
    if strong {
        EquivFlags::STRONG
    } else {
        EquivFlags::FULL
    }
}

fn write_counterexample(out: &Option<PathBuf>, g: &HGraph) -> Result<()> {
    let text = serde_json::to_string(g)?;
    match out {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            let p = dir.join("counterexample.json");
            std::fs::write(&p, text)?;
            println!("counterexample: {}", p.display());
        }
        None => println!("counterexample: {text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Cmd::Check { file } => {
            let g = read_graph(&file)?;
            let cyc = spectra::is_cyclotomic(&g).is_cyclotomic;
            let max = cyc && g.is_connected() && spectra::is_maximal(&g)?;
            println!("cyclotomic: {}, maximal: {}, A^2=4I: {}", yes(cyc), yes(max), yes(g.square_is_4i()));
            Ok(verdict(cyc))
        }
        Cmd::Charpoly { file } => {
            println!("{}", read_graph(&file)?.charpoly());
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Mahler { file, tol, poly } => {
            let m = match (poly, file) {
                (Some(p), None) => mahler_measure(&IntPoly::parse(&p)?, tol)?,
                (None, Some(f)) => spectra::mahler(&read_graph(&f)?, tol)?,
                _ => return Err(Error::BadParameter("give exactly one of FILE and --poly".into())),
            };
            println!("{m:.12}");
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Canon { file, strong } => {
            let f = canonical_form(&read_graph(&file)?, flags(strong));
            println!("{}", f.key);
            println!("{}", serde_json::to_string(&f.graph)?);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Equiv { a, b, strong } => {
            let e = are_equivalent(&read_graph(&a)?, &read_graph(&b)?, flags(strong))?;
            println!("equivalent: {}", yes(e));
            Ok(verdict(e))
        }
        Cmd::Contains { g, h } => {
            let (g, h) = (read_graph(&g)?, read_graph(&h)?);
            let (g, h) = cyclo::equiv::common_ring(&g, &h)?;
            match find_embedding(&g, &h, EquivFlags::FULL) {
                Some(e) => {
                    println!("contains: yes");
                    println!("map: {:?}", e.map);
                    let units: Vec<String> = e.units.iter().map(QuadInt::to_string).collect();
                    println!("units: [{}]", units.join(", "));
                    println!("conjugated: {}, negated: {}", yes(e.conjugated), yes(e.negated));
                    Ok(ExitCode::SUCCESS)
                }
                None => {
                    println!("contains: no");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Cmd::Catalog(CatalogCmd::List) => {
            for (name, kind) in catalog::names() {
                println!("{name}\t{}", serde_json::to_value(kind)?.as_str().unwrap_or(""));
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Catalog(CatalogCmd::Emit { name, param, format }) => {
            let g = catalog::lookup(&name, param)?;
            match format {
                Format::Json => println!("{}", serde_json::to_string(&g)?),
                Format::Dot => print!("{}", g.to_dot(&name)),
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Grow(a) => grow(a),
        Cmd::Verify(v) => verify(v),
        Cmd::Export { file, dot } => {
            let g = read_graph(&file)?;
            if dot {
                let name = file.file_stem().and_then(|s| s.to_str()).unwrap_or("G");
                print!("{}", g.to_dot(name));
            } else {
                println!("{}", serde_json::to_string(&g)?);
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn grow(a: GrowArgs) -> Result<ExitCode> {
    set_jobs(a.jobs);
    let ring = RingId::parse(&a.ring)?;
    let charges = a
        .charges
        .split(',')
        .map(|c| c.trim().parse::<i64>().map_err(|_| Error::Parse(format!("charge {c:?}"))))
        .collect::<Result<Vec<_>>>()?;
    let exclusions = match a.exclusions.as_str() {
        "none" => None,
        name => Some(catalog::exclusion_list(name)?),
    };
    let seeds = if a.seed.is_empty() {
        vec![HGraph::empty(ring, 1)]
    } else {
        a.seed.iter().map(|p| read_graph(p)).collect::<Result<_>>()?
    };
    let config = GrowConfig {
        ring,
        charges,
        weights: search::parse_weights(ring, &a.weights)?,
        exclusions,
        max_n: a.max_n,
        seeds,
        require_connected: true,
        limit: a.limit,
    };
    let report = search::grow_with(&config, &GrowOptions { checkpoint: Some(a.out.clone()), resume: a.resume })?;
    std::fs::write(a.out.join("report.txt"), report.summary())?;
    std::fs::write(a.out.join("report.json"), serde_json::to_string(&report)?)?;
    print!("{}", report.summary());
    Ok(ExitCode::SUCCESS)
}

fn verify(v: VerifyCmd) -> Result<ExitCode> {
    match v {
        VerifyCmd::Type2 { excluded, table, maximals, out, jobs } => {
            set_jobs(jobs);
            let t = catalog::containment_table(&table)?;
            let row = t
                .rows
                .iter()
                .find(|r| r.0 == excluded)
                .ok_or_else(|| Error::UnknownName(format!("{excluded} in {table}")))?;
            let names: Vec<String> = match maximals {
                Some(m) => m.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect(),
                None => row.1.clone(),
            };
            let ms = names.iter().map(|n| catalog::lookup(n, None)).collect::<Result<Vec<_>>>()?;
            let h = catalog::excluded(&excluded)?;
            let o = search::verify_type2(&h, &ms, &search::table_config(&t))?;
            println!("{excluded} against [{}]: {} ({} classes)", names.join(", "), yes(o.holds), o.classes);
            if let Some(c) = &o.counterexample {
                write_counterexample(&out, c)?;
            }
            Ok(verdict(o.holds))
        }
        VerifyCmd::Classification { ring, max_n, out, resume, jobs } => {
            set_jobs(jobs);
            let ring = RingId::parse(&ring)?;
            let r = search::verify_classification_with(ring, max_n, &GrowOptions { checkpoint: out.clone(), resume })?;
            for (n, c) in &r.counts_by_n {
                println!("n={n} classes={c}");
            }
            println!("maximal found: {}", r.maximal_found.join(", "));
            println!("orphans: {}", r.orphans.len());
            println!("unlisted maximal: {}", r.unlisted_maximal.len());
            if let Some(g) = r.orphans.first().or(r.unlisted_maximal.first()) {
                write_counterexample(&out, g)?;
            }
            Ok(verdict(r.ok()))
        }
        VerifyCmd::HeavyEdges { ring } => {
            let r = search::verify_weight_heavy_edges(RingId::parse(&ring)?)?;
            println!("weight 2 edge within S_2: {} ({} classes)", yes(r.weight_two.holds), r.weight_two.classes);
            if let Some(o) = &r.one_plus_omega {
                println!("1+w edge within S_4tt: {} ({} classes)", yes(o.holds), o.classes);
            }
            Ok(verdict(r.ok()))
        }
        VerifyCmd::Tables { table, jobs } => {
            set_jobs(jobs);
            let names: Vec<String> = match table {
                Some(t) => vec![t],
                None => catalog::TABLES.iter().map(|s| s.to_string()).collect(),
            };
            let mut ok = true;
            for t in names {
                let r = search::verify_table(&t)?;
                for row in &r.rows {
                    let missed: Vec<&str> = row.drop_detected.iter().filter(|d| !d.1).map(|d| d.0.as_str()).collect();
                    println!(
                        "{t} {}: {} ({} classes){}",
                        row.excluded,
                        yes(row.holds),
                        row.classes,
                        if missed.is_empty() {
                            String::new()
                        } else {
                            format!(", dropping {} undetected", missed.join(", "))
                        }
                    );
                }
                ok &= r.ok();
            }
            Ok(verdict(ok))
        }
    }
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
