//! One function per subcommand, each returning metadata and a table.

use lmeasure_core::arith::PrimeSieve;
use lmeasure_core::lfunction::{CoefficientTail, EulerCoefficients, TruncationPolicy};
use lmeasure_core::limit_laws::{bj_moment, bj_moment_series, bj_sample_range, uniform_l_moment, BJParams};
use lmeasure_core::measures::{build_measure, sample_range, MeasureKind};
use lmeasure_core::moments::{
    a_limit_moment, congruence_series_moment, error_bound, exact_moment, limit_moment, riemann_moment,
    uniform_moment, RiemannSum,
};
use lmeasure_core::plancherel::{coeff_character, dimension_square_sum, mn_character, partitions_of};
use lmeasure_core::stats::mean_with_se;
use lmeasure_core::{CharacterMeasure, CharacterTable, MomentResult, MomentSpec, Support};
use rayon::prelude::*;

use crate::output::{fmt_float, Cell, Metadata, Table};
use crate::{Cli, CliError, Command, JointExponents, MeasureArgs, MeasureChoice, MethodChoice};

pub const TABLE_COLUMNS: &[&str] = &["index", "order", "principal", "real", "exponents"];
pub const WEIGHTS_COLUMNS: &[&str] = &["index", "order", "weight", "l_re", "l_im", "l_bound"];
pub const SAMPLE_COLUMNS: &[&str] = &["draw", "character", "chi_re", "chi_im", "angle"];
pub const MOMENT_COLUMNS: &[&str] = &["method", "value_re", "value_im", "error_budget"];
pub const SCAN_Q_COLUMNS: &[&str] = &["q", "moment_re", "moment_im", "limit", "bound", "deviation"];
pub const JOINT_COLUMNS: &[&str] = &["q", "method", "value_re", "value_im", "error_budget"];
pub const UNIFORM_COLUMNS: &[&str] = &["q", "value_re", "value_im", "indicator", "equal"];
pub const BOHR_JESSEN_COLUMNS: &[&str] = &["k", "route", "value", "std_error", "certificate"];
pub const PLANCHEREL_COLUMNS: &[&str] = &["lambda", "mu", "mn", "coeff", "equal"];

/// Subcommand names with their fixed columns, in `--help` order.
pub const COMMANDS: &[(&str, &[&str])] = &[
    ("table", TABLE_COLUMNS),
    ("weights", WEIGHTS_COLUMNS),
    ("sample", SAMPLE_COLUMNS),
    ("moment", MOMENT_COLUMNS),
    ("scan-q", SCAN_Q_COLUMNS),
    ("joint", JOINT_COLUMNS),
    ("uniform", UNIFORM_COLUMNS),
    ("bohr-jessen", BOHR_JESSEN_COLUMNS),
    ("plancherel-verify", PLANCHEREL_COLUMNS),
];

/// Draws per parallel work unit. Streams are counter based, so the split
/// never changes the output.
const CHUNK: u64 = 8192;
const CONGRUENCE_NMAX: u64 = 1_000_000;
const SERIES_NMAX: u64 = 1_000_000;
const UNIFORM_NMAX: u64 = 100_000;

type Output = Result<Table, CliError>;

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

pub fn dispatch(cli: &Cli, argv: Vec<String>) -> Result<(Metadata, Table), CliError> {
    let policy = TruncationPolicy::new(cli.tol, cli.nmax.unwrap_or(100_000_000))?;
    let mut meta = Metadata { argv, seed: cli.seed, ..Default::default() };
    meta.param("tol", fmt_float(cli.tol));
    let table = match &cli.command {
        Command::Table { q } => {
            meta.command = "table".into();
            table(&mut meta, *q)
        }
        Command::Weights { q, measure } => {
            meta.command = "weights".into();
            weights(&mut meta, *q, measure, &policy)
        }
        Command::Sample { q, measure, m, count } => {
            meta.command = "sample".into();
            sample(&mut meta, *q, measure, *m, *count, &policy)
        }
        Command::Moment { q, measure, m, k, l, method } => {
            meta.command = "moment".into();
            moment(&mut meta, *q, measure, (*m, *k, *l), *method, cli.nmax, &policy)
        }
        Command::ScanQ { qs, s, m, k, l } => {
            meta.command = "scan-q".into();
            scan_q(&mut meta, qs, *s, (*m, *k, *l))
        }
        Command::Joint { moduli, measure, exps } => {
            meta.command = "joint".into();
            joint(&mut meta, &moduli.list(), measure, exps, &policy)
        }
        Command::Uniform { moduli, exps } => {
            meta.command = "uniform".into();
            uniform(&mut meta, &moduli.list(), exps)
        }
        Command::BohrJessen { t, k, pmax, count, q } => {
            meta.command = "bohr-jessen".into();
            bohr_jessen(&mut meta, *t, *k, *pmax, *count, *q, cli.nmax)
        }
        Command::PlancherelVerify { n } => {
            meta.command = "plancherel-verify".into();
            plancherel(&mut meta, *n)
        }
    }?;
    Ok((meta, table))
}

fn coefficients(args: &MeasureArgs) -> Result<EulerCoefficients, CliError> {
    let overrides = args.a.clone().unwrap_or_default().0;
    Ok(EulerCoefficients::new(overrides, CoefficientTail::Power { s: args.s })?)
}

fn check_measure_args(args: &MeasureArgs) -> Result<(), CliError> {
    if args.a.is_some() && args.measure != MeasureChoice::A {
        return Err(invalid("--a only applies to --measure a"));
    }
    if args.measure != MeasureChoice::Uniform && !(args.s > 1.0 && args.s.is_finite()) {
        return Err(invalid(format!("--s must be a finite number > 1, got {}", args.s)));
    }
    if args.measure == MeasureChoice::A {
        coefficients(args)?;
    }
    Ok(())
}

fn record_measure(meta: &mut Metadata, args: &MeasureArgs) {
    match args.measure {
        MeasureChoice::L => {
            meta.param("measure", "l");
            meta.param("s", fmt_float(args.s));
        }
        MeasureChoice::Uniform => meta.param("measure", "uniform"),
        MeasureChoice::A => {
            meta.param("measure", "a");
            meta.param("s", fmt_float(args.s));
            let a = args.a.clone().unwrap_or_default().0;
            let text: Vec<String> = a.iter().map(|(p, v)| format!("{p}={v}")).collect();
            meta.param("a", text.join(","));
        }
    }
}

fn make_measure<'a>(
    table: &'a CharacterTable,
    args: &MeasureArgs,
    policy: &TruncationPolicy,
    meta: &mut Metadata,
) -> Result<CharacterMeasure<'a>, CliError> {
    let kind = match args.measure {
        MeasureChoice::L => MeasureKind::L { s: args.s },
        MeasureChoice::Uniform => MeasureKind::Uniform,
        MeasureChoice::A => MeasureKind::A(coefficients(args)?),
    };
    let m = build_measure(table, kind, policy)?;
    meta.cert(&format!("q{}_partition_function", table.modulus()), fmt_float(m.partition_function()));
    meta.cert(&format!("q{}_weight_l1_error", table.modulus()), fmt_float(m.normalized_error()));
    Ok(m)
}

fn new_table(q: u64) -> Result<CharacterTable, CliError> {
    Ok(CharacterTable::new(q)?)
}

fn table(meta: &mut Metadata, q: u64) -> Output {
    meta.param("q", q);
    let t = new_table(q)?;
    let mut out = Table::new(TABLE_COLUMNS);
    for chi in t.iter() {
        let exps: Vec<String> = chi.exps().iter().map(u64::to_string).collect();
        out.push(vec![
            chi.index().into(),
            chi.order().into(),
            chi.is_principal().into(),
            chi.is_real().into(),
            exps.join(";").into(),
        ]);
    }
    Ok(out)
}

fn weights(meta: &mut Metadata, q: u64, args: &MeasureArgs, policy: &TruncationPolicy) -> Output {
    check_measure_args(args)?;
    meta.param("q", q);
    record_measure(meta, args);
    let t = new_table(q)?;
    let m = make_measure(&t, args, policy, meta)?;
    let mut out = Table::new(WEIGHTS_COLUMNS);
    for chi in t.iter() {
        let i = chi.index();
        let l = m.l_values().map(|v| v[i]);
        out.push(vec![
            i.into(),
            chi.order().into(),
            m.weight(i).into(),
            l.map(|v| v.value.re).into(),
            l.map(|v| v.value.im).into(),
            l.map(|v| v.bound).into(),
        ]);
    }
    Ok(out)
}

fn chunks(count: u64) -> Vec<(u64, u64)> {
    (0..count.div_ceil(CHUNK)).map(|c| (c * CHUNK, ((c + 1) * CHUNK).min(count))).collect()
}

fn sample(meta: &mut Metadata, q: u64, args: &MeasureArgs, m: u64, count: u64, policy: &TruncationPolicy) -> Output {
    check_measure_args(args)?;
    if m == 0 {
        return Err(invalid("--m must be >= 1"));
    }
    meta.param("q", q);
    record_measure(meta, args);
    meta.param("m", m);
    meta.param("count", count);
    let t = new_table(q)?;
    let measure = make_measure(&t, args, policy, meta)?;
    let seed = meta.seed;
    let column = t.column(m as i64);
    let e = t.exponent();
    let draws: Vec<usize> = chunks(count)
        .into_par_iter()
        .flat_map_iter(|(a, b)| sample_range(&measure, seed, a, b))
        .collect();
    let mut out = Table::new(SAMPLE_COLUMNS);
    for (n, &i) in draws.iter().enumerate() {
        let z = t.character(i).eval(m as i64);
        let angle = column
            .as_ref()
            .map(|c| 2.0 * std::f64::consts::PI * c[i] as f64 / e as f64);
        out.push(vec![n.into(), i.into(), z.re.into(), z.im.into(), angle.into()]);
    }
    Ok(out)
}

fn moment_row(r: &MomentResult) -> Vec<Cell> {
    vec![r.method.name().into(), r.value.re.into(), r.value.im.into(), r.error_budget.into()]
}

fn moment(
    meta: &mut Metadata,
    q: u64,
    args: &MeasureArgs,
    (m, k, l): (u64, u32, u32),
    method: MethodChoice,
    nmax: Option<u64>,
    policy: &TruncationPolicy,
) -> Output {
    check_measure_args(args)?;
    let s = (args.measure != MeasureChoice::Uniform).then_some(args.s);
    let spec = MomentSpec::single(q, s, m, k, l)?;
    let is_l = args.measure == MeasureChoice::L;
    if !is_l && matches!(method, MethodChoice::Riemann | MethodChoice::Congruence) {
        return Err(invalid("riemann and congruence methods need --measure l"));
    }
    let n_cong = nmax.unwrap_or(CONGRUENCE_NMAX);
    meta.param("q", q);
    record_measure(meta, args);
    meta.param("m", m);
    meta.param("k", k);
    meta.param("l", l);
    meta.param("support", "coprime");
    let methods: Vec<MethodChoice> = match method {
        MethodChoice::All if is_l => vec![MethodChoice::Bruteforce, MethodChoice::Riemann, MethodChoice::Congruence],
        MethodChoice::All => vec![MethodChoice::Bruteforce, MethodChoice::Limit],
        other => vec![other],
    };
    if methods.contains(&MethodChoice::Congruence) {
        meta.param("nmax", n_cong);
    }
    let mut out = Table::new(MOMENT_COLUMNS);
    for which in methods {
        let r = match which {
            MethodChoice::Bruteforce => {
                let t = new_table(q)?;
                let measure = make_measure(&t, args, policy, meta)?;
                exact_moment(&measure, &spec)?
            }
            MethodChoice::Riemann => riemann_moment(args.s, q, m, k, l, Support::Coprime)?,
            MethodChoice::Congruence => congruence_series_moment(args.s, q, m, k, l, n_cong, Support::Coprime)?,
            MethodChoice::Limit => limit_for(args, q, &[m], &[k], &[l])?,
            MethodChoice::All => unreachable!("expanded above"),
        };
        out.push(moment_row(&r));
    }
    Ok(out)
}

/// The q-limit under each measure; for the uniform measure the finite-q
/// indicator is already exact.
fn limit_for(args: &MeasureArgs, q: u64, bases: &[u64], ks: &[u32], ls: &[u32]) -> Result<MomentResult, CliError> {
    Ok(match args.measure {
        MeasureChoice::L => limit_moment(args.s, bases, ks, ls)?,
        MeasureChoice::Uniform => uniform_moment(q, bases, ks, ls)?,
        MeasureChoice::A => a_limit_moment(&coefficients(args)?, bases, ks, ls)?,
    })
}

fn scan_q(meta: &mut Metadata, qs: &[u64], s: f64, (m, k, l): (u64, u32, u32)) -> Output {
    let limit = limit_moment(s, &[m], &[k], &[l])?.value.re;
    for &q in qs {
        MomentSpec::single(q, Some(s), m, k, l)?;
    }
    let list: Vec<String> = qs.iter().map(u64::to_string).collect();
    meta.param("qs", list.join(","));
    meta.param("s", fmt_float(s));
    meta.param("m", m);
    meta.param("k", k);
    meta.param("l", l);
    meta.param("support", "coprime");
    let rows: Vec<Vec<Cell>> = qs
        .par_iter()
        .map(|&q| -> Result<Vec<Cell>, CliError> {
            let r = RiemannSum::new(s, q, Support::Coprime)?.moment(m, k, l);
            let bound = error_bound(s, q, m, k, l, Support::Coprime)?;
            Ok(vec![
                q.into(),
                r.value.re.into(),
                r.value.im.into(),
                limit.into(),
                bound.into(),
                (r.value - limit).norm().into(),
            ])
        })
        .collect::<Result<_, _>>()?;
    let mut out = Table::new(SCAN_Q_COLUMNS);
    rows.into_iter().for_each(|r| out.push(r));
    Ok(out)
}

fn record_exps(meta: &mut Metadata, qs: &[u64], exps: &JointExponents) {
    let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
    let wide = |v: &[u32]| v.iter().map(|x| *x as u64).collect::<Vec<_>>();
    meta.param("qs", join(qs));
    meta.param("bases", join(&exps.bases));
    meta.param("ks", join(&wide(&exps.ks)));
    meta.param("ls", join(&wide(&exps.ls)));
}

fn joint(meta: &mut Metadata, qs: &[u64], args: &MeasureArgs, exps: &JointExponents, policy: &TruncationPolicy) -> Output {
    check_measure_args(args)?;
    for &q in qs {
        MomentSpec::new(q, Some(args.s), exps.bases.clone(), exps.ks.clone(), exps.ls.clone())?;
    }
    let limit = limit_for(args, qs[0], &exps.bases, &exps.ks, &exps.ls)?;
    record_exps(meta, qs, exps);
    record_measure(meta, args);
    let mut out = Table::new(JOINT_COLUMNS);
    for &q in qs {
        let t = new_table(q)?;
        let measure = make_measure(&t, args, policy, meta)?;
        let spec = MomentSpec::new(q, Some(args.s), exps.bases.clone(), exps.ks.clone(), exps.ls.clone())?;
        let r = exact_moment(&measure, &spec)?;
        let lim = match args.measure {
            MeasureChoice::Uniform => uniform_moment(q, &exps.bases, &exps.ks, &exps.ls)?,
            _ => limit,
        };
        for row in [r, lim] {
            let mut cells = vec![Cell::from(q)];
            cells.extend(moment_row(&row));
            out.push(cells);
        }
    }
    Ok(out)
}

fn uniform(meta: &mut Metadata, qs: &[u64], exps: &JointExponents) -> Output {
    for &q in qs {
        MomentSpec::new(q, None, exps.bases.clone(), exps.ks.clone(), exps.ls.clone())?;
    }
    record_exps(meta, qs, exps);
    let rows: Vec<Vec<Cell>> = qs
        .par_iter()
        .map(|&q| -> Result<Vec<Cell>, CliError> {
            let t = new_table(q)?;
            let measure = lmeasure_core::measures::uniform_measure(&t);
            let spec = MomentSpec::new(q, None, exps.bases.clone(), exps.ks.clone(), exps.ls.clone())?;
            let v = exact_moment(&measure, &spec)?.value;
            let ind = uniform_moment(q, &exps.bases, &exps.ks, &exps.ls)?.value.re;
            let equal = (v.re - ind).abs() < 1e-12 && v.im.abs() < 1e-12;
            Ok(vec![q.into(), v.re.into(), v.im.into(), ind.into(), equal.into()])
        })
        .collect::<Result<_, _>>()?;
    let mut out = Table::new(UNIFORM_COLUMNS);
    rows.into_iter().for_each(|r| out.push(r));
    Ok(out)
}

fn bohr_jessen(meta: &mut Metadata, t: f64, k: u64, pmax: u64, count: u64, q: Option<u64>, nmax: Option<u64>) -> Output {
    let params = BJParams::new(t, pmax)?;
    if k == 0 {
        return Err(invalid("--k must be >= 1"));
    }
    if pmax < 2 {
        return Err(invalid("--pmax must be >= 2"));
    }
    if let Some(q) = q {
        if q == 0 || k > 3 {
            return Err(invalid("the uniform route needs q >= 1 and k <= 3"));
        }
    }
    let n_series = nmax.unwrap_or(SERIES_NMAX);
    meta.param("t", fmt_float(t));
    meta.param("k", k);
    meta.param("pmax", pmax);
    meta.param("count", count);
    meta.param("series_nmax", n_series);
    let mut out = Table::new(BOHR_JESSEN_COLUMNS);
    let product = bj_moment(t, k, pmax)?;
    out.push(vec![k.into(), "product".into(), product.value.re.into(), Cell::Empty, product.bound.into()]);
    let series = bj_moment_series(t, k, n_series as usize)?;
    out.push(vec![k.into(), "series".into(), series.value.re.into(), Cell::Empty, series.bound.into()]);
    if count > 0 {
        let sieve = PrimeSieve::new(pmax);
        let seed = meta.seed;
        let powers: Vec<f64> = chunks(count)
            .into_par_iter()
            .flat_map_iter(|(a, b)| bj_sample_range(&params, sieve.primes(), seed, a, b))
            .map(|z| z.norm_sqr().powi(k as i32))
            .collect();
        let (mean, se) = mean_with_se(&powers);
        out.push(vec![k.into(), "monte-carlo".into(), mean.into(), se.into(), Cell::Empty]);
    }
    if let Some(q) = q {
        meta.param("q", q);
        meta.param("uniform_nmax", UNIFORM_NMAX);
        let u = uniform_l_moment(t, k, q, UNIFORM_NMAX as usize, Support::Coprime)?;
        out.push(vec![k.into(), "uniform".into(), u.value.re.into(), Cell::Empty, u.bound.into()]);
    }
    Ok(out)
}

fn plancherel(meta: &mut Metadata, n: usize) -> Output {
    if n == 0 || n > 6 {
        return Err(invalid(format!("--n must be between 1 and 6, got {n}")));
    }
    meta.param("n", n);
    let parts = partitions_of(n)?;
    let factorial: u64 = (1..=n as u64).product();
    let squares = dimension_square_sum(n)?;
    meta.cert("dimension_square_sum", &squares);
    meta.cert("n_factorial", factorial);
    let mut out = Table::new(PLANCHEREL_COLUMNS);
    for lambda in &parts {
        for mu in &parts {
            let mn = mn_character(lambda, mu)?;
            let coeff = coeff_character(lambda, mu)?;
            let equal = mn == coeff;
            out.push(vec![lambda.to_string().into(), mu.to_string().into(), mn.to_string().into(), coeff.to_string().into(), equal.into()]);
        }
    }
    Ok(out)
}
