use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use pathcalc_core::finance::{binomial_price, hedge, lognormal_gap, BsParams};
use pathcalc_core::generators::{
    brownian_dyadic, fbm_cholesky, first_passage_skeleton, fourier_pair_sums_multi, kono_path,
    step_path, FourierPairCoefficients, KonoSpec,
};
use pathcalc_core::path::{parse_path_csv, parse_sequence_json, write_path_csv};
use pathcalc_core::product::{doleans, duality_roundtrip, lambda_generator, linear_equation_residual, Direction};
use pathcalc_core::stieltjes::{
    chain_rule, chain_rule_trace, indefinite_integral, lambda_integral_with, C2Map, Exp, Log, Side, Square,
};
use pathcalc_core::variation::{
    gladyshev_index, p_variation, quadratic_covariation_with, quadratic_variation_with, BracketResult,
    PVarMethod,
};
use pathcalc_core::{Partition, PartitionSequence, SampledPath, Tolerance};
use rayon::prelude::*;

use crate::args::{Cli, Command, DirectionArg, Format, GenKind, PathInput, PhiArg, ReadStyle, SideArg, TolArgs};
use crate::output::{Cell, Table};
use crate::verify::{self, Scale};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Core(#[from] pathcalc_core::Error),
    #[error("{file}: {source}")]
    Input {
        file: String,
        source: pathcalc_core::Error,
    },
    #[error("{file}: {source}")]
    Io { file: String, source: io::Error },
    #[error("{0}")]
    Usage(String),
}

type Result<T> = std::result::Result<T, CliError>;

fn read_text(file: &Path) -> Result<String> {
    let io_err = |source| CliError::Io {
        file: file.display().to_string(),
        source,
    };
    if file.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(io_err)?;
        Ok(s)
    } else {
        std::fs::read_to_string(file).map_err(io_err)
    }
}

fn input_err(file: &Path) -> impl Fn(pathcalc_core::Error) -> CliError + '_ {
    move |source| CliError::Input {
        file: file.display().to_string(),
        source,
    }
}

fn read_path(file: &Path, style: ReadStyle) -> Result<SampledPath> {
    let p = parse_path_csv(&read_text(file)?).map_err(input_err(file))?;
    let p = match style {
        ReadStyle::Auto => p,
        ReadStyle::Continuous => SampledPath::continuous(p.grid().clone(), p.values().to_vec())?,
        ReadStyle::Step => SampledPath::step(p.grid().clone(), p.values().to_vec())?,
    };
    Ok(p)
}

fn sequence_for(grid: &Partition, base: u32, depth: Option<usize>, descriptor: Option<&PathBuf>) -> Result<PartitionSequence> {
    if let Some(file) = descriptor {
        return parse_sequence_json(&read_text(file)?).map_err(input_err(file));
    }
    let full = PartitionSequence::infer_dyadic(grid, base)?;
    match depth {
        None => Ok(full),
        Some(d) if d == full.depth() => Ok(full),
        Some(d) if d < full.depth() => Ok(full.truncated(d)?),
        Some(d) => Err(CliError::Usage(format!(
            "--depth {d} exceeds the {} levels carried by the grid",
            full.depth()
        ))),
    }
}

fn load(input: &PathInput) -> Result<(SampledPath, PartitionSequence)> {
    let path = read_path(&input.input, input.style)?;
    let lambda = sequence_for(path.grid(), input.base, input.depth, input.sequence.as_ref())?;
    Ok((path, lambda))
}

fn tolerance(t: &TolArgs) -> Result<Tolerance> {
    if !(t.rel_tol >= 0.0 && t.abs_tol >= 0.0) {
        return Err(CliError::Usage("tolerances must be nonnegative".into()));
    }
    Ok(Tolerance::new(t.rel_tol, t.abs_tol))
}

fn side(s: SideArg) -> Side {
    match s {
        SideArg::Lc => Side::Left,
        SideArg::Rc => Side::Right,
    }
}

enum Emit {
    Path(SampledPath),
    Table(Table),
}

/// Runs a parsed command line and returns the process exit code.
pub fn execute(cli: Cli) -> Result<i32> {
    let mut code = 0;
    let emit = match cli.command {
        Command::Gen { kind } => generate(kind)?,
        Command::Pvar { path, p } => {
            let (f, _) = load(&path)?;
            let v = p_variation(&f, p)?;
            let mut t = Table::new(&["p", "value", "method"]);
            let method = match v.method {
                PVarMethod::Dynamic => "dynamic",
                PVarMethod::FinestGrid => "finest-grid",
            };
            t.push(vec![p.into(), v.value.into(), Cell::Text(method.into())]);
            Emit::Table(t)
        }
        Command::Bracket { path, tol } => {
            let (f, lambda) = load(&path)?;
            let b = quadratic_variation_with(&f, &lambda, &tolerance(&tol)?)?;
            Emit::Table(bracket_table(&b, "bracket"))
        }
        Command::Cov { path, with, tol } => {
            let (f, lambda) = load(&path)?;
            let g = read_path(&with, path.style)?;
            let b = quadratic_covariation_with(&f, &g, &lambda, &tolerance(&tol)?)?;
            Emit::Table(bracket_table(&b, "covariation"))
        }
        Command::Index { path, window } => {
            let (f, lambda) = load(&path)?;
            let est = gladyshev_index(&f, &lambda, window)?;
            let mut t = Table::new(&["level", "intervals", "s2", "estimate"]);
            for l in &est.per_level {
                t.push(vec![l.level.into(), l.intervals.into(), l.s2.into(), l.estimate.into()]);
            }
            t.push(vec![Cell::Text("fit".into()), Cell::Empty, Cell::Empty, est.fitted.into()]);
            t.note("fitted", est.fitted);
            t.note("window", est.window);
            Emit::Table(t)
        }
        Command::Integrate { path, against, side: s, indefinite, tol } => {
            let (phi, lambda) = load(&path)?;
            let g = read_path(&against, path.style)?;
            if indefinite {
                Emit::Path(indefinite_integral(&phi, &g, &lambda, side(s))?)
            } else {
                let est = lambda_integral_with(
                    &phi,
                    &g,
                    &lambda,
                    side(s),
                    lambda.start(),
                    lambda.end(),
                    &tolerance(&tol)?,
                )?;
                let mut t = Table::new(&["level", "value"]);
                for &(m, v) in &est.per_level {
                    t.push(vec![m.into(), v.into()]);
                }
                t.note("value", est.value);
                t.note("converged", est.converged);
                t.note("jump_defect", est.jump_defect());
                Emit::Table(t)
            }
        }
        Command::Chainrule { path, phi, side: s } => {
            let (f, lambda) = load(&path)?;
            let map: &dyn C2Map = match phi {
                PhiArg::Square => &Square,
                PhiArg::Exp => &Exp,
                PhiArg::Log => &Log,
            };
            let trace = chain_rule_trace(map, &f, &lambda, side(s))?;
            let rep = chain_rule(map, &f, &lambda, lambda.start(), lambda.end(), side(s))?;
            let mut t = Table::new(&["t", "residual"]);
            for (x, r) in lambda.finest().points().iter().zip(&trace) {
                t.push(vec![(*x).into(), (*r).into()]);
            }
            t.note("sup_residual", trace.iter().fold(0.0_f64, |m, r| m.max(r.abs())));
            t.note("lhs", rep.lhs);
            t.note("integral_term", rep.integral_term);
            t.note("bracket_term", rep.bracket_term);
            t.note("jump_correction", rep.jump_correction);
            t.note("integral_converged", rep.integral.converged);
            t.note("bracket_converged", rep.bracket_converged);
            Emit::Table(t)
        }
        Command::Doleans { path, direction, residual } => {
            let (f, lambda) = load(&path)?;
            if residual {
                if direction != DirectionArg::Forward {
                    return Err(CliError::Usage("--residual applies to the forward exponential only".into()));
                }
                let r = linear_equation_residual(&f, &lambda)?;
                let mut t = Table::new(&["t", "residual"]);
                for (x, v) in r.grid.iter().zip(&r.values) {
                    t.push(vec![(*x).into(), (*v).into()]);
                }
                t.note("sup", r.sup);
                Emit::Table(t)
            } else {
                let d = match direction {
                    DirectionArg::Forward => Direction::Forward,
                    DirectionArg::Backward => Direction::Backward,
                };
                Emit::Path(doleans(&f, &lambda, d)?.to_path())
            }
        }
        Command::Duality { path } => {
            let (g, lambda) = load(&path)?;
            let d = duality_roundtrip(&g, &lambda)?;
            let mut t = Table::new(&["generator_gap", "product_gap"]);
            t.push(vec![d.generator_gap.into(), d.product_gap.into()]);
            Emit::Table(t)
        }
        Command::Generator { path } => {
            let (u, lambda) = load(&path)?;
            Emit::Path(lambda_generator(&u, &lambda)?.as_path().clone())
        }
        Command::Hedge { strike, r, sigma, depth, base, path } => {
            let price = read_path(&path, ReadStyle::Auto)?;
            let lambda = sequence_for(price.grid(), base, depth, None)?;
            let params = BsParams::new(strike, r, sigma, lambda.end())?;
            let h = hedge(&params, &price, &lambda)?;
            let mut t = Table::new(&["t", "alpha", "beta", "value", "gain", "residual"]);
            for i in 0..h.grid.len() {
                t.push(vec![
                    h.grid[i].into(),
                    h.alpha[i].into(),
                    h.beta[i].into(),
                    h.value[i].into(),
                    h.gain[i].into(),
                    h.residual[i].into(),
                ]);
            }
            t.note("sup_residual", h.sup_residual);
            t.note("terminal_payoff_gap", h.terminal_payoff_gap);
            t.note("bracket_ratio", h.bracket_ratio);
            Emit::Table(t)
        }
        Command::Binomial { m, seed, t_end, depth } => {
            if m == 0 {
                return Err(CliError::Usage("--m must be at least 1".into()));
            }
            let b = brownian_dyadic(1.5 * t_end, depth, seed)?;
            let sk = first_passage_skeleton(&b.path, m)?;
            if sk.is_empty() {
                return Err(CliError::Usage("the Brownian path made no crossing; skeleton is empty".into()));
            }
            let pm = binomial_price(&sk.values, m, t_end)?;
            let mut t = Table::new(&["t", "binomial", "lognormal"]);
            for (&x, &v) in pm.times().iter().zip(pm.values()) {
                t.push(vec![x.into(), v.into(), (b.path.eval(x) - 0.5 * x).exp().into()]);
            }
            t.note("sup_gap", lognormal_gap(&pm, &b.path));
            t.note("clock_error", sk.clock_error());
            t.note("skeleton_steps", sk.len());
            Emit::Table(t)
        }
        Command::Nonex { n_list, kmax, reps, seed } => Emit::Table(nonex(&n_list, kmax, reps, seed)?),
        Command::Verify { quick, only } => {
            let scale = if quick { Scale::Quick } else { Scale::Full };
            let outcomes = if only.is_empty() {
                verify::run_all(scale)
            } else {
                only.iter()
                    .map(|&id| verify::run(id, scale).ok_or_else(|| CliError::Usage(format!("no criterion {id}"))))
                    .collect::<Result<Vec<_>>>()?
            };
            if outcomes.iter().any(|o| !o.passed) {
                code = 1;
            }
            let mut out = open_output(cli.output.as_deref())?;
            let io = |e| CliError::Io { file: "output".into(), source: e };
            match cli.format {
                Format::Csv => {
                    for o in &outcomes {
                        writeln!(out, "{o}").map_err(io)?;
                    }
                }
                Format::Json => {
                    serde_json::to_writer_pretty(&mut out, &outcomes).map_err(|e| io(e.into()))?;
                    writeln!(out).map_err(io)?;
                }
            }
            out.flush().map_err(io)?;
            return Ok(code);
        }
    };
    write(emit, cli.format, cli.output.as_deref())?;
    Ok(code)
}

fn bracket_table(b: &BracketResult, name: &'static str) -> Table {
    let mut t = Table::new(&["t", name, "continuous", "jump"]);
    for (i, &x) in b.grid.points().iter().enumerate() {
        t.push(vec![x.into(), b.total[i].into(), b.continuous_part[i].into(), b.jump_part[i].into()]);
    }
    t.note("value", b.value());
    t.note("level_totals", b.level_totals());
    t.note("converged", b.converged);
    t
}

fn generate(kind: GenKind) -> Result<Emit> {
    Ok(match kind {
        GenKind::Brownian { depth, seed, t_end } => Emit::Path(brownian_dyadic(t_end, depth, seed)?.path),
        GenKind::Fbm { hurst, n, seed, t_end } => Emit::Path(fbm_cholesky(hurst, n, t_end, seed)?),
        GenKind::Kono { depth, base, hurst, x } => {
            Emit::Path(kono_path(&KonoSpec { base, hurst, x, depth })?.0)
        }
        GenKind::Step { depth, base, t_end, jumps } => {
            let lambda = PartitionSequence::dyadic(t_end, base, depth)?;
            let parsed = jumps
                .iter()
                .map(|j| {
                    let bad = || CliError::Usage(format!("jump `{j}` is not of the form t:delta"));
                    let (t, d) = j.split_once(':').ok_or_else(bad)?;
                    Ok((t.trim().parse().map_err(|_| bad())?, d.trim().parse().map_err(|_| bad())?))
                })
                .collect::<Result<Vec<(f64, f64)>>>()?;
            Emit::Path(step_path(lambda.finest(), &parsed)?)
        }
        GenKind::Skeleton { input, m } => {
            let b = read_path(&input, ReadStyle::Auto)?;
            let sk = first_passage_skeleton(&b, m)?;
            let mut t = Table::new(&["k", "tau", "w"]);
            if !sk.is_empty() {
                for k in 0..sk.times.len() {
                    t.push(vec![k.into(), sk.times[k].into(), sk.values[k].into()]);
                }
            }
            t.note("empty", sk.is_empty());
            t.note("clock_error", sk.clock_error());
            Emit::Table(t)
        }
        GenKind::Fourier { kmax, seed, n } => {
            if kmax == 0 || n == 0 {
                return Err(CliError::Usage("--kmax and --n must be positive".into()));
            }
            let coef = FourierPairCoefficients::draw(kmax, seed);
            let mut t = Table::new(&["t", "x", "y"]);
            for i in 0..=n {
                let s = i as f64 / n as f64;
                let (x, y) = coef.eval(s);
                t.push(vec![s.into(), x.into(), y.into()]);
            }
            Emit::Table(t)
        }
    })
}

fn nonex(ns: &[usize], kmax: usize, reps: usize, seed: u64) -> Result<Table> {
    if ns.is_empty() || reps < 2 {
        return Err(CliError::Usage("need a nonempty --n-list and at least 2 --reps".into()));
    }
    let draws = (0..reps as u64)
        .into_par_iter()
        .map(|k| fourier_pair_sums_multi(ns, kmax, seed + k))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let mut t = Table::new(&["n", "ln_n", "exact_mean", "lower_bound", "sample_mean", "sample_var"]);
    let mut logs = Vec::new();
    let mut exact = Vec::new();
    for (j, &n) in ns.iter().enumerate() {
        let z: Vec<f64> = draws.iter().map(|d| d[j].z_lc).collect();
        let mean = z.iter().sum::<f64>() / z.len() as f64;
        let var = z.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (z.len() - 1) as f64;
        let ln = (n as f64).ln();
        let bound = 2.0 / std::f64::consts::PI.powi(2) * (ln - 1.0);
        t.push(vec![n.into(), ln.into(), draws[0][j].exact_mean.into(), bound.into(), mean.into(), var.into()]);
        logs.push(ln);
        exact.push(draws[0][j].exact_mean);
    }
    if ns.len() >= 2 {
        let k = logs.len() as f64;
        let (mx, my) = (logs.iter().sum::<f64>() / k, exact.iter().sum::<f64>() / k);
        let sxy: f64 = logs.iter().zip(&exact).map(|(x, y)| (x - mx) * (y - my)).sum();
        let sxx: f64 = logs.iter().map(|x| (x - mx).powi(2)).sum();
        t.note("exact_mean_slope", sxy / sxx);
    }
    t.note("kmax", kmax);
    t.note("reps", reps);
    Ok(t)
}

fn open_output(file: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match file {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|source| CliError::Io {
            file: p.display().to_string(),
            source,
        })?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write(emit: Emit, format: Format, file: Option<&Path>) -> Result<()> {
    if matches!(emit, Emit::Path(_)) && format == Format::Json {
        return Err(CliError::Usage("paths are written as CSV only".into()));
    }
    let mut out = open_output(file)?;
    let name = file.map_or("stdout".to_string(), |p| p.display().to_string());
    let io = |source| CliError::Io { file: name.clone(), source };
    match emit {
        Emit::Path(p) => write_path_csv(&p, &mut out).map_err(io)?,
        Emit::Table(t) => t.write(format, &mut out).map_err(io)?,
    }
    out.flush().map_err(io)
}

/// Caps the global thread pool at `PATHCALC_THREADS` when it is set.
pub fn configure_threads() -> Result<()> {
    let Ok(v) = std::env::var("PATHCALC_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("PATHCALC_THREADS must be a positive integer, got `{v}`")))?;
    // A pool built earlier in the process wins; that is fine for a cap.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}
