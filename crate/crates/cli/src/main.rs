use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use pascalmod::automata::{
    affine_dfa, altsum_dfa, cobham_morphism, compose_with_triple, nim_triple_dfa, pad_tuple,
    pair_dfa_n, unary_word, Dfa, Direction,
};
use pascalmod::{pascal, pyramid, summatory, Prime};
use pascalmod_cli::bfile::format_bfile;
use pascalmod_cli::checks::{run_checks, Fault, Level};
use pascalmod_cli::oeis::OeisClient;
use pascalmod_cli::sequence::{emit_sequence, SeqName, SequenceDescriptor, CITED_IDS};
use pascalmod_cli::{plot, render, CliError, CliResult};

#[derive(Parser)]
#[command(
    name = "pascalmod",
    version,
    about = "Pascal's triangle and pyramid modulo a prime"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the first terms of a named sequence
    Seq(SeqArgs),
    /// Print row n of Pascal's triangle mod p and t_{p,n}
    Row {
        n: u64,
        #[arg(short, long, default_value = "2")]
        p: Prime,
    },
    /// Write PGM or SVG renders
    #[command(subcommand)]
    Render(RenderCmd),
    /// Write CSV plot data
    Plot(PlotArgs),
    /// Export or run the automata
    #[command(subcommand)]
    Dfa(DfaCmd),
    /// Print the uniform morphism for E_p and a prefix of its fixed point
    Morphism {
        #[arg(short, long, default_value = "2")]
        p: Prime,
        #[arg(long, default_value_t = 27)]
        prefix: usize,
    },
    /// Summatory functions at M, or the dyadic interval summary for k
    Summatory {
        #[arg(long)]
        m: Option<u64>,
        #[arg(long)]
        k: Option<u32>,
    },
    /// Pascal's pyramid checks
    #[command(subcommand)]
    Pyramid(PyramidCmd),
    /// OEIS b-file cross-checks
    #[command(subcommand)]
    Oeis(OeisCmd),
    /// Run the property suite
    Check {
        #[arg(long, value_enum, default_value = "quick")]
        level: LevelArg,
        #[arg(long, value_enum)]
        inject_fault: Option<FaultArg>,
    },
}

#[derive(Args)]
struct SeqArgs {
    /// t, tprime, N, alpha, evil, Ep, sub, fermat-product, fermat, poly-eval, t-pyramid
    name: String,
    #[arg(short, long, default_value = "2")]
    p: Prime,
    #[arg(short = 'n', long, default_value_t = 20)]
    count: usize,
    /// chain root for `sub`
    #[arg(long, default_value_t = 1)]
    root: u64,
    /// evaluation point for `poly-eval` (default p)
    #[arg(long, allow_hyphen_values = true)]
    x: Option<i64>,
    /// print "index value" lines
    #[arg(long)]
    bfile: bool,
}

#[derive(Subcommand)]
enum RenderCmd {
    Triangle {
        #[arg(short, long, default_value = "2")]
        p: Prime,
        #[arg(long, default_value_t = 32)]
        rows: usize,
        #[arg(long, value_enum, default_value = "pgm")]
        format: ImageFormat,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    PyramidPlane {
        #[arg(short = 'n', long)]
        n: u64,
        #[arg(short, long, default_value = "2")]
        p: Prime,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// One PGM per z-slice of σ^k(1)
    PyramidCube {
        #[arg(short, long, default_value = "2")]
        p: Prime,
        #[arg(short, long)]
        k: u32,
        #[arg(long)]
        out_dir: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ImageFormat {
    Pgm,
    Svg,
}

#[derive(Args)]
struct PlotArgs {
    #[arg(value_enum)]
    kind: PlotKind,
    #[arg(long, default_value_t = 0)]
    start: u64,
    #[arg(long, default_value_t = 128)]
    end: u64,
    #[arg(short, long, default_value = "2")]
    p: Prime,
    #[arg(short, long, default_value_t = 4)]
    k: u32,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum PlotKind {
    AlphaDiff,
    SnSe,
    NimScatter,
    Parabola,
}

#[derive(Clone, Copy, ValueEnum)]
enum Machine {
    /// pairs (m, N_p(m))
    Pair,
    /// y = a·x + b, least significant digit first
    Affine,
    /// x ⊕_p y = z
    Triple,
    /// alternating digit sum ≡ 0
    Altsum,
    /// pair machine rebuilt from the affine and triple machines
    Composed,
}

#[derive(Args)]
struct MachineArgs {
    #[arg(value_enum)]
    machine: Machine,
    #[arg(short, long, default_value = "2")]
    p: Prime,
    #[arg(short, long, default_value_t = 2)]
    a: u32,
    #[arg(short, long, default_value_t = 0)]
    b: u32,
    #[arg(long)]
    minimize: bool,
}

#[derive(Subcommand)]
enum DfaCmd {
    /// Graphviz DOT
    Export {
        #[command(flatten)]
        m: MachineArgs,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Run on the padded representations of the given integers
    Run {
        #[command(flatten)]
        m: MachineArgs,
        values: Vec<BigUint>,
    },
}

#[derive(Subcommand)]
enum PyramidCmd {
    /// Compare the block rule with direct trinomials on x+y+z ≤ limit
    BlockCheck {
        #[arg(short, long, default_value = "2")]
        p: Prime,
        #[arg(long, default_value_t = 64)]
        limit: u64,
    },
    /// Translation identities on plane i at digit position k
    Translate {
        i: u64,
        #[arg(short, long, default_value = "5")]
        p: Prime,
        #[arg(short, long, default_value_t = 1)]
        k: u32,
    },
    /// Line values t_{p,n,k} of plane n
    Plane {
        n: u64,
        #[arg(short, long, default_value = "2")]
        p: Prime,
    },
}

#[derive(Subcommand)]
enum OeisCmd {
    /// Compare b-files with the emitted terms
    Verify {
        /// an id like A048724, or `all` for every cross-referenced entry
        id: String,
        #[arg(long)]
        fixtures: Option<PathBuf>,
        /// overrides $PASCALMOD_OEIS_CACHE
        #[arg(long)]
        cache: Option<PathBuf>,
        /// allow downloads from oeis.org
        #[arg(long)]
        network: bool,
        /// skip the copies compiled into the binary
        #[arg(long)]
        no_bundled: bool,
        #[arg(long)]
        terms: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum FaultArg {
    MuTable,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("pascalmod: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::io(path, e)),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| CliError::io("<stdout>", e))
        }
    }
}

fn run(cmd: Command) -> CliResult<()> {
    match cmd {
        Command::Seq(a) => {
            let name: SeqName = a.name.parse()?;
            let mut desc = SequenceDescriptor::new(name, a.p).with_root(a.root);
            if let Some(x) = a.x {
                desc = desc.with_x(x);
            }
            let terms = emit_sequence(&desc, a.count)?;
            let text = if a.bfile {
                format_bfile(None, desc.offset, &terms)
            } else {
                terms.iter().map(|t| format!("{t}\n")).collect()
            };
            emit(None, &text)
        }
        Command::Row { n, p } => {
            let row = pascal::row(n, p);
            emit(None, &format!("{row}\nt = {}\n", row.value()))
        }
        Command::Render(r) => run_render(r),
        Command::Plot(a) => {
            let csv = match a.kind {
                PlotKind::AlphaDiff => plot::alpha_diff(a.start, a.end, a.p)?,
                PlotKind::SnSe => plot::sn_se(a.start, a.end)?,
                PlotKind::NimScatter => plot::nim_scatter(a.start, a.end, a.p)?,
                PlotKind::Parabola => plot::parabola(a.k)?,
            };
            emit(a.out.as_deref(), &csv)
        }
        Command::Dfa(DfaCmd::Export { m, out }) => {
            let d = build_machine(&m)?;
            emit(out.as_deref(), &d.to_dot())
        }
        Command::Dfa(DfaCmd::Run { m, values }) => run_machine(&m, &values),
        Command::Morphism { p, prefix } => {
            let phi = cobham_morphism(p);
            let mut text = String::new();
            for (j, w) in phi.words().iter().enumerate() {
                text += &format!("{j} -> {w}  (code {})\n", phi.coding()[j]);
            }
            let fixed: String = phi
                .fixed_point_prefix(prefix)
                .iter()
                .map(u32::to_string)
                .collect();
            let coded: String = phi
                .coded_prefix(prefix)
                .iter()
                .map(u32::to_string)
                .collect();
            text += &format!("fixed point: {fixed}\ncoded:       {coded}\n");
            emit(None, &text)
        }
        Command::Summatory { m, k } => run_summatory(m, k),
        Command::Pyramid(c) => run_pyramid(c),
        Command::Oeis(OeisCmd::Verify {
            id,
            fixtures,
            cache,
            network,
            no_bundled,
            terms,
        }) => {
            let mut client = OeisClient {
                fixture_dir: fixtures,
                network,
                use_bundled: !no_bundled,
                ..OeisClient::default()
            };
            if let Some(c) = cache {
                client.cache_dir = c;
            }
            let ids: Vec<String> = if id.eq_ignore_ascii_case("all") {
                CITED_IDS.iter().map(|s| s.to_string()).collect()
            } else {
                vec![id]
            };
            let mut failed = 0;
            for id in &ids {
                let r = client.verify(id, terms)?;
                println!("{r}");
                if !r.passed() {
                    failed += 1;
                }
            }
            if failed > 0 {
                return Err(CliError::CheckFailed(format!(
                    "{failed} OEIS entries disagree"
                )));
            }
            Ok(())
        }
        Command::Check {
            level,
            inject_fault,
        } => {
            let level = match level {
                LevelArg::Quick => Level::Quick,
                LevelArg::Full => Level::Full,
            };
            let fault = inject_fault.map(|FaultArg::MuTable| Fault::MuTable);
            let reports = run_checks(level, fault);
            let mut failed = 0;
            for r in &reports {
                let tag = if r.passed() { "PASS" } else { "FAIL" };
                println!("[{tag}] {r}");
                if !r.passed() {
                    failed += 1;
                }
            }
            if failed > 0 {
                return Err(CliError::CheckFailed(format!(
                    "{failed} of {} laws failed",
                    reports.len()
                )));
            }
            Ok(())
        }
    }
}

fn run_render(cmd: RenderCmd) -> CliResult<()> {
    match cmd {
        RenderCmd::Triangle {
            p,
            rows,
            format,
            out,
        } => {
            let text = match format {
                ImageFormat::Pgm => render::triangle_raster(p, rows)?.to_pgm(),
                ImageFormat::Svg => render::triangle_svg(p, rows)?,
            };
            emit(out.as_deref(), &text)
        }
        RenderCmd::PyramidPlane { n, p, out } => {
            let r = render::plane_raster(&pyramid::plane(n, p));
            emit(out.as_deref(), &r.to_pgm())
        }
        RenderCmd::PyramidCube { p, k, out_dir } => {
            let cube = pyramid::iterate_sigma(p, k)?;
            fs::create_dir_all(&out_dir).map_err(|e| CliError::io(&out_dir, e))?;
            for z in 0..cube.side {
                let path = out_dir.join(format!("slice_{z:04}.pgm"));
                let text = render::cube_slice_raster(&cube, z).to_pgm();
                fs::write(&path, text).map_err(|e| CliError::io(&path, e))?;
            }
            println!("wrote {} slices to {}", cube.side, out_dir.display());
            Ok(())
        }
    }
}

fn build_machine(m: &MachineArgs) -> CliResult<Dfa> {
    let p = m.p;
    let d = match m.machine {
        Machine::Pair => pair_dfa_n(p),
        Machine::Affine => affine_dfa(m.a, m.b, p),
        Machine::Triple => nim_triple_dfa(p),
        Machine::Altsum => altsum_dfa(p),
        Machine::Composed => compose_with_triple(&affine_dfa(p.get(), 0, p), &nim_triple_dfa(p))?,
    };
    Ok(if m.minimize { d.minimize() } else { d })
}

fn run_machine(m: &MachineArgs, values: &[BigUint]) -> CliResult<()> {
    let d = build_machine(m)?;
    if values.len() != d.arity() {
        return Err(CliError::Usage(format!(
            "this machine reads {} integers, got {}",
            d.arity(),
            values.len()
        )));
    }
    let p = d.base();
    let word = if d.arity() == 1 {
        unary_word(&values[0], p, d.direction())
    } else {
        let refs: Vec<&BigUint> = values.iter().collect();
        let mut w = pad_tuple(&refs, p);
        if d.direction() == Direction::LsdFirst {
            w.reverse();
        }
        w
    };
    let letters: Vec<String> = word
        .iter()
        .map(|l| l.iter().map(u32::to_string).collect::<Vec<_>>().join("/"))
        .collect();
    let states: Vec<String> = d.trace(&word).iter().map(usize::to_string).collect();
    let verdict = if d.accepts(&word) { "accept" } else { "reject" };
    emit(
        None,
        &format!(
            "input ({}): {}\nstates: {}\n{verdict}\n",
            d.direction().label(),
            letters.join(" "),
            states.join(" -> ")
        ),
    )
}

fn run_summatory(m: Option<u64>, k: Option<u32>) -> CliResult<()> {
    if m.is_none() && k.is_none() {
        return Err(CliError::Usage("give --m, --k or both".into()));
    }
    let mut text = String::new();
    if let Some(m) = m {
        if m > 10_000_000 {
            return Err(CliError::Usage("--m is limited to 10^7".into()));
        }
        let se = summatory::evil_sum_closed(m);
        let sn = summatory::step_sum_via_gray(m)?;
        let brute = summatory::step_sum_brute(m, Prime::TWO);
        text += &format!("S_e({m}) = {se}\nS_N({m}) = {sn}\nS_N({m}) brute = {brute}\n");
        text += &format!("S_N - S_e = {}\n", sn as i128 - se as i128);
    }
    if let Some(k) = k {
        let d = summatory::dyadic_report(k)?;
        text += &format!(
            "k = {k}: max S_N - S_e = {} at M = {}\n{}\n",
            d.max_difference, d.argmax, d.report
        );
    }
    emit(None, &text)
}

fn run_pyramid(cmd: PyramidCmd) -> CliResult<()> {
    match cmd {
        PyramidCmd::BlockCheck { p, limit } => {
            let pv = p.as_u64();
            let mut report = pascalmod::Report::new(format!("block rule up to {limit}, p={p}"));
            for sum in 0..=limit {
                for x in 0..=sum {
                    for y in 0..=sum - x {
                        let z = sum - x - y;
                        let got = pyramid::block_relation(
                            x / pv,
                            y / pv,
                            z / pv,
                            (x % pv) as u32,
                            (y % pv) as u32,
                            (z % pv) as u32,
                            p,
                        )?;
                        let want = pyramid::trinomial(x, y, z, p);
                        report.check(got == want, || format!("({x},{y},{z}): {got} vs {want}"));
                    }
                }
            }
            println!("{report}");
            if report.passed() {
                Ok(())
            } else {
                Err(CliError::CheckFailed(report.name))
            }
        }
        PyramidCmd::Translate { i, p, k } => {
            let t = pyramid::translation_identity_check(i, k, p)?;
            let mut text = String::new();
            for c in &t.cells {
                text += &format!(
                    "{:?} {:?} -> {:?}: {:?} {}\n",
                    c.axis,
                    c.source,
                    c.target,
                    c.case,
                    if c.holds { "ok" } else { "FAILS" }
                );
            }
            text += &format!("{}\n", t.report);
            emit(None, &text)?;
            if t.report.passed() {
                Ok(())
            } else {
                Err(CliError::CheckFailed(t.report.name))
            }
        }
        PyramidCmd::Plane { n, p } => {
            let pl = pyramid::plane(n, p);
            let text: String = pl
                .line_values()
                .iter()
                .enumerate()
                .map(|(k, v)| format!("{k} {v}\n"))
                .collect();
            emit(None, &text)
        }
    }
}
