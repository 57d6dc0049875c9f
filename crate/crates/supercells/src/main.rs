use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use supercells::cellsys::{run_cells, CellOptions, RingSpec};
use supercells::daha::{a_degree_bound, daha_superpolynomial, selftest, KnotPresentation};
use supercells::exactalg::LaurentQTA;
use supercells::geomsuper::{
    check_alexander, check_t1_power, dual_normalization, oracle_compare, oracle_compare_torus, oracle_enumerate,
    OracleOptions,
};
use supercells::gmod::enumerate_flags;
use supercells::harness::{
    check_conjecture, geometric_side, khr_substitution, reproduce_tables, ring_for_knot, CompareMode, RingChoice,
    RunConfig, TableRow,
};
use supercells::semigroup::semigroup_from_generators;
use supercells::torusdim::{torus_motivic_super, TorusRing};

#[derive(Parser)]
#[command(name = "supercells", version, about = "Jacobian factor cells and superpolynomials of plane curve singularities")]
struct Cli {
    /// Write the main output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    #[command(subcommand)]
    Semigroup(SemigroupCmd),
    #[command(subcommand)]
    Gmod(GmodCmd),
    #[command(subcommand)]
    Cells(CellsCmd),
    #[command(subcommand)]
    Superpoly(SuperpolyCmd),
    /// Count modules and flags over 𝔽_p directly and compare with the cells.
    Oracle {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, default_value_t = 1)]
        rank: usize,
        #[arg(long, default_value_t = 3)]
        prime: u32,
        #[arg(long, default_value_t = 1)]
        max_ell: usize,
        /// Largest rk·𝖼 to enumerate.
        #[arg(long)]
        size_limit: Option<usize>,
    },
    #[command(subcommand)]
    Check(CheckCmd),
    #[command(subcommand)]
    Reproduce(ReproduceCmd),
    #[command(subcommand)]
    Daha(DahaCmd),
}

#[derive(Subcommand)]
enum SemigroupCmd {
    /// Generators, gaps, δ, conductor and multiplicity as JSON.
    Info {
        #[command(flatten)]
        ring: RingArgs,
    },
}

#[derive(Subcommand)]
enum GmodCmd {
    /// One JSON line per flag of standard modules.
    Enumerate {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, default_value_t = 1)]
        rank: usize,
        /// Longest flag.
        #[arg(long, default_value_t = 0)]
        flags: usize,
    },
}

#[derive(Subcommand)]
enum CellsCmd {
    /// One JSON line per cell.
    Run {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, default_value_t = 1)]
        rank: usize,
        #[arg(long, default_value_t = 0)]
        flags: usize,
        #[command(flatten)]
        fields: FieldArgs,
    },
}

#[derive(Subcommand)]
enum SuperpolyCmd {
    /// From the dimension formulas of torus rings.
    Torus {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long, default_value_t = 1)]
        rank: usize,
        /// Longest flag; defaults to rk·(min(p, q) − 1).
        #[arg(long)]
        lmax: Option<usize>,
    },
    /// From the cells.
    Motivic {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, default_value_t = 1)]
        rank: usize,
        /// Longest flag; defaults to rk·(multiplicity − 1).
        #[arg(long)]
        flags_max: Option<usize>,
        /// Print q^{rk²δ} t^{rkδ} H(1/t, 1/q, a) instead.
        #[arg(long)]
        dual: bool,
        #[command(flatten)]
        fields: FieldArgs,
    },
    /// From DAHA-Jones polynomials.
    Daha {
        /// Newton pairs r:s, comma separated.
        #[arg(long)]
        newton: String,
        #[arg(long, default_value_t = 1)]
        rank: usize,
        /// Refuse to work with GL_n for n above this.
        #[arg(long, default_value_t = 4)]
        nmax: usize,
    },
}

#[derive(Subcommand)]
enum CheckCmd {
    /// Geometric side against the DAHA side or a golden polynomial.
    Conjecture {
        /// JSON run configuration; the flags below override it.
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        newton: Option<String>,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long)]
        flags_max: Option<usize>,
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        #[arg(long)]
        golden: Option<PathBuf>,
        /// The golden file is in the dual normalization.
        #[arg(long)]
        golden_dual: bool,
        #[arg(long)]
        margin: Option<usize>,
    },
    /// H(q, q, −1) = (1 − q)Σ_{γ∈Γ} q^γ in rank 1.
    Alexander {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        newton: Option<String>,
    },
    /// H_rk(q, 1, a) = H_1(q, 1, a)^rk.
    T1 {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        newton: Option<String>,
        #[arg(long, default_value_t = 2)]
        rank: usize,
    },
    /// Rank-1 superpolynomial in the standard topological parameters;
    /// passes when no coefficient is negative.
    Khr {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        newton: Option<String>,
    },
}

#[derive(Subcommand)]
enum ReproduceCmd {
    /// Rank-2 cell-type tables of ⟨4, 6, 6+v⟩ for v = 7, 9, 15.
    Tables {
        #[arg(long)]
        v: i64,
        #[arg(long)]
        flags: Option<usize>,
        #[arg(long)]
        json: bool,
        /// Compare with the bundled table; fails when a bundled row is missing.
        #[arg(long)]
        diff: bool,
    },
}

#[derive(Subcommand)]
enum DahaCmd {
    /// DAHA relations, φ-invariance and Macdonald evaluation checks.
    Selftest,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Full,
    ATruncated,
    TEqualsOne,
}

/// k[[z⁴, z⁶ + zᵛ]] via --v, or a torus ring via --gens p,q or --p/--q.
#[derive(Args, Clone, Default)]
struct RingArgs {
    /// Ring family label, "4:6+v" or "torus"; informational.
    #[arg(long)]
    ring: Option<String>,
    #[arg(long)]
    v: Option<i64>,
    #[arg(long, value_delimiter = ',')]
    gens: Option<Vec<usize>>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
}

impl RingArgs {
    fn choice(&self) -> Result<Option<RingChoice>> {
        if let Some(v) = self.v {
            return Ok(Some(RingChoice::Family { v }));
        }
        match (self.gens.as_deref(), self.p, self.q) {
            (Some(&[p, q]), _, _) | (None, Some(p), Some(q)) => Ok(Some(RingChoice::Torus { p, q })),
            (Some(&[4, 6, w]), _, _) => Ok(Some(RingChoice::Family { v: w as i64 - 6 })),
            (Some(g), _, _) => bail!("no ring is known for generators {g:?}"),
            _ => Ok(None),
        }
    }

    fn spec(&self, newton: Option<&str>) -> Result<RingSpec> {
        match (self.choice()?, newton) {
            (Some(c), _) => Ok(c.spec()?),
            (None, Some(n)) => Ok(ring_for_knot(&KnotPresentation::parse(n)?)?),
            (None, None) => bail!("give a ring with --v, --gens or --p/--q"),
        }
    }
}

#[derive(Args, Clone)]
struct FieldArgs {
    /// Fields 𝔽_{p^m} for point counts, as p:m.
    #[arg(long = "field", value_parser = parse_field, default_values = ["3:1", "3:2"])]
    fields: Vec<(u32, u32)>,
}

fn parse_field(s: &str) -> Result<(u32, u32), String> {
    let (p, m) = s.split_once(':').ok_or("expected p:m")?;
    Ok((p.parse().map_err(|_| "bad p")?, m.parse().map_err(|_| "bad m")?))
}

impl FieldArgs {
    fn options(&self) -> CellOptions {
        let mut c = RunConfig::new(None, None, 1);
        c.fields = self.fields.clone();
        c.cell_options()
    }
}

fn write_poly(out: &mut dyn Write, h: &LaurentQTA) -> Result<()> {
    writeln!(out, "{}", h.to_json())?;
    writeln!(out, "{}", h.to_text())?;
    Ok(())
}

fn table_line(r: &TableRow) -> String {
    let set = |s: &[usize]| format!("{{{}}}", s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "));
    match &r.d0 {
        Some(d0) => format!("{},{}: {},{}", set(d0), set(&r.d_top), r.potential_dim, r.cell_type),
        None => format!("{}: {},{}", set(&r.d_top), r.potential_dim, r.cell_type),
    }
}

fn motivic(ring: &RingSpec, rank: usize, opts: &CellOptions) -> Result<LaurentQTA> {
    let ell = rank * (ring.semigroup.multiplicity - 1);
    Ok(geometric_side(ring, rank, ell, true, opts)?.1)
}

fn verdict(out: &mut dyn Write, name: &str, result: std::result::Result<(), LaurentQTA>) -> Result<bool> {
    match &result {
        Ok(()) => writeln!(out, "{}", json!({ "check": name, "pass": true }))?,
        Err(d) => writeln!(out, "{}", json!({ "check": name, "pass": false, "difference": d }))?,
    }
    Ok(result.is_ok())
}

fn run(cli: Cli) -> Result<bool> {
    let mut out: Box<dyn Write> = match &cli.out {
        Some(p) => Box::new(BufWriter::new(std::fs::File::create(p).with_context(|| p.display().to_string())?)),
        None => Box::new(BufWriter::new(std::io::stdout().lock())),
    };
    let out = out.as_mut();
    let ok = match cli.command {
        Command::Semigroup(SemigroupCmd::Info { ring }) => {
            let s = match &ring.gens {
                Some(g) => semigroup_from_generators(g)?,
                None => ring.spec(None)?.semigroup,
            };
            writeln!(out, "{}", serde_json::to_string(&s.info())?)?;
            true
        }
        Command::Gmod(GmodCmd::Enumerate { ring, rank, flags }) => {
            let s = ring.spec(None)?.semigroup;
            for ell in 0..=flags {
                for f in enumerate_flags(&s, rank, ell) {
                    let line = json!({
                        "D0_dag": f.dset_at(0).primitive,
                        "D1_dag": f.dset_at(f.len()).primitive,
                        "dev0": f.base.dev(),
                        "added": f.added,
                    });
                    writeln!(out, "{line}")?;
                }
            }
            true
        }
        Command::Cells(CellsCmd::Run { ring, rank, flags, fields }) => {
            let spec = ring.spec(None)?;
            let partial = rank * rank * spec.delta();
            for c in run_cells(&spec, rank, flags, &fields.options())? {
                let line = json!({
                    "D0_dag": c.d0_dag,
                    "D1_dag": c.d_top_dag,
                    "added": c.added,
                    "ell": c.ell,
                    "kappa": c.kappa,
                    "potential_dim": c.potential_dim,
                    "type": c.cell_type.label(),
                    "contribution": c.contribution(partial),
                });
                writeln!(out, "{line}")?;
            }
            true
        }
        Command::Superpoly(SuperpolyCmd::Torus { p, q, rank, lmax }) => {
            let ring = TorusRing::new(p, q, rank)?;
            let lmax = lmax.unwrap_or(rank * (p.min(q) - 1));
            write_poly(out, &torus_motivic_super(&ring, lmax))?;
            true
        }
        Command::Superpoly(SuperpolyCmd::Motivic { ring, rank, flags_max, dual, fields }) => {
            let spec = ring.spec(None)?;
            let ell = flags_max.unwrap_or(rank * (spec.semigroup.multiplicity - 1));
            let (_, h) = geometric_side(&spec, rank, ell, true, &fields.options())?;
            let h = if dual { dual_normalization(&h, rank, spec.delta()) } else { h };
            write_poly(out, &h)?;
            true
        }
        Command::Superpoly(SuperpolyCmd::Daha { newton, rank, nmax }) => {
            let knot = KnotPresentation::parse(&newton)?;
            let need = rank + a_degree_bound(&knot, rank) + 1;
            if need > nmax {
                bail!("this knot needs GL_{need}, above --nmax {nmax}");
            }
            write_poly(out, &daha_superpolynomial(&knot, rank)?.h)?;
            true
        }
        Command::Oracle { ring, rank, prime, max_ell, size_limit } => {
            let spec = ring.spec(None)?;
            let counts = oracle_enumerate(&spec, rank, &OracleOptions { prime, max_ell, size_limit })?;
            if counts.bad_reduction {
                eprintln!("warning: p = 2 is a place of bad reduction for this ring");
            }
            let cells = run_cells(&spec, rank, max_ell, &CellOptions::default())?;
            let mut bad = oracle_compare(&cells, &counts, &spec, rank);
            if spec.f.len() == 1 {
                let tr = TorusRing::new(spec.p, spec.q(), rank)?;
                bad.extend(oracle_compare_torus(&tr, &counts, max_ell));
            }
            for (key, predicted, found) in &bad {
                let line = json!({ "ell": key.ell, "D0": key.d0, "added": key.added, "predicted": predicted, "found": found });
                writeln!(out, "{line}")?;
            }
            writeln!(out, "{}", json!({ "strata": counts.counts.len(), "mismatches": bad.len() }))?;
            bad.is_empty()
        }
        Command::Check(cmd) => check(cmd, out)?,
        Command::Reproduce(ReproduceCmd::Tables { v, flags, json: as_json, diff }) => {
            let report = reproduce_tables(v, flags, &CellOptions::default())?;
            if as_json {
                writeln!(out, "{}", serde_json::to_string(&report)?)?;
            } else {
                for r in &report.rows {
                    writeln!(out, "{}", table_line(r))?;
                }
                if diff {
                    for r in &report.misses {
                        writeln!(out, "missing {}", table_line(r))?;
                    }
                    writeln!(out, "{} rows, {} missing, {} not in the bundled table", report.rows.len(), report.misses.len(), report.extras)?;
                }
            }
            !diff || report.misses.is_empty()
        }
        Command::Daha(DahaCmd::Selftest) => {
            let report = selftest();
            writeln!(out, "{}", serde_json::to_string(&report)?)?;
            report.passed()
        }
    };
    out.flush()?;
    Ok(ok)
}

fn check(cmd: CheckCmd, out: &mut dyn Write) -> Result<bool> {
    Ok(match cmd {
        CheckCmd::Conjecture { config, ring, newton, rank, flags_max, mode, golden, golden_dual, margin } => {
            let mut c = match &config {
                Some(p) => serde_json::from_str(&std::fs::read_to_string(p).with_context(|| p.display().to_string())?)?,
                None => RunConfig::new(None, None, 1),
            };
            if let Some(r) = ring.choice()? {
                c.ring = Some(r);
            }
            c.newton = newton.or(c.newton);
            c.rank = rank.unwrap_or(c.rank);
            c.max_ell = flags_max.or(c.max_ell);
            c.golden = golden.or(c.golden);
            c.golden_dual |= golden_dual;
            c.trunc_margin = margin.unwrap_or(c.trunc_margin);
            if let Some(m) = mode {
                c.mode = match m {
                    Mode::Full => CompareMode::Full,
                    Mode::ATruncated => CompareMode::ATruncated,
                    Mode::TEqualsOne => CompareMode::TEqualsOne,
                };
            }
            let report = check_conjecture(&c)?;
            let line = json!({ "check": "conjecture", "mode": report.mode, "pass": report.equal, "difference": report.difference });
            writeln!(out, "{line}")?;
            report.equal
        }
        CheckCmd::Alexander { ring, newton } => {
            let spec = ring.spec(newton.as_deref())?;
            let h = motivic(&spec, 1, &CellOptions::default())?;
            verdict(out, "alexander", check_alexander(&h, &spec.semigroup))?
        }
        CheckCmd::T1 { ring, newton, rank } => {
            let spec = ring.spec(newton.as_deref())?;
            let h1 = motivic(&spec, 1, &CellOptions::default())?;
            let h = motivic(&spec, rank, &CellOptions::default())?;
            verdict(out, "t1", check_t1_power(&h, &h1, rank as u32))?
        }
        CheckCmd::Khr { ring, newton } => {
            let spec = ring.spec(newton.as_deref())?;
            let k = khr_substitution(&motivic(&spec, 1, &CellOptions::default())?)?;
            let pass = k.terms().all(|(_, c)| !c.is_negative());
            writeln!(out, "{}", json!({ "check": "khr", "pass": pass, "polynomial": k }))?;
            pass
        }
    })
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
