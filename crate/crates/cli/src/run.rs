use std::fmt;
use std::io;

use serde_json::json;
use tgquad::chebyshev::{modified_chebyshev, modified_moments};
use tgquad::precision::{relative_deviation, round_to_digits};
use tgquad::quadrature::{gauss_rule, monomial_moment};
use tgquad::recurrence::shifted_jacobi_support;
use tgquad::zsweep::{build_surface_on_grid, linspace_grid, max_relative_error, stepped_grid};
use tgquad::{with_real, PrecisionContext, Real};

use crate::emit::Report;
use crate::{Command, IntegrateArgs, PointArgs, Precision, SweepArgs, VerifyArgs};

#[derive(Debug)]
pub enum Failure {
    Lib(tgquad::Error),
    Io(io::Error),
}

impl From<tgquad::Error> for Failure {
    fn from(e: tgquad::Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Lib(e) => e.fmt(f),
            Failure::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl Failure {
    /// 3 for numerical failures, 2 for rejected input, 1 for i/o.
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Lib(e) if e.is_numeric() => 3,
            Failure::Lib(_) => 2,
            Failure::Io(_) => 1,
        }
    }

    /// One-line JSON error record.
    pub fn record(&self) -> String {
        let value = match self {
            Failure::Lib(e) => json!({ "error": e.kind(), "stage": e.stage(), "message": e.to_string() }),
            Failure::Io(e) => json!({ "error": "io", "stage": "output", "message": e.to_string() }),
        };
        value.to_string()
    }
}

pub fn execute(command: &Command) -> Result<(), Failure> {
    let (report, out) = match command {
        Command::Moments(a) => (moments(a)?, &a.out),
        Command::Recurrence(a) => (recurrence(a)?, &a.out),
        Command::Gauss(a) => (gauss(a)?, &a.out),
        Command::Sweep(a) => (sweep(a)?, &a.out),
        Command::Verify(a) => (verify(a)?, &a.out),
        Command::Integrate(a) => (integrate(a)?, &a.point.out),
    };
    report.deliver(out.format, out.output.as_deref())?;
    Ok(())
}

fn sig_of(p: &Precision) -> usize {
    p.sig.unwrap_or(p.digits as usize).max(1)
}

fn point_params(cmd: &'static str, a: &PointArgs, sig: usize) -> Vec<(&'static str, String)> {
    vec![
        ("command", cmd.to_owned()),
        ("alpha", a.alpha.clone()),
        ("z", a.z.clone()),
        ("n", a.n.to_string()),
        ("digits", a.precision.digits.to_string()),
        ("sig", sig.to_string()),
    ]
}

fn parse_point<R: Real>(a: &PointArgs, ctx: &PrecisionContext) -> tgquad::Result<(R, R)> {
    Ok((R::parse(&a.alpha, ctx)?, R::parse(&a.z, ctx)?))
}

fn moments(a: &PointArgs) -> Result<Report, Failure> {
    let ctx = PrecisionContext::new(a.precision.digits)?;
    let sig = sig_of(&a.precision);
    let mut report = Report::new(&["n", "m"]);
    let terms = with_real!(ctx, R => {
        let (alpha, z) = parse_point::<R>(a, &ctx)?;
        let mom = modified_moments(&alpha, &z, 2 * a.n, &ctx)?;
        for (i, m) in mom.m.iter().enumerate() {
            report.push(vec![i.to_string(), round_to_digits(m, sig)]);
        }
        mom.max_series_terms
    });
    report.params = point_params("moments", a, sig);
    report.diagnostics = vec![("max_series_terms", terms.to_string())];
    report.summary = format!(
        "moments m_0..m_{} for alpha={} z={} at {} digits",
        2 * a.n - 1,
        a.alpha,
        a.z,
        a.precision.digits
    );
    Ok(report)
}

fn recurrence(a: &PointArgs) -> Result<Report, Failure> {
    let ctx = PrecisionContext::new(a.precision.digits)?;
    let sig = sig_of(&a.precision);
    let mut report = Report::new(&["k", "b", "a"]);
    let terms = with_real!(ctx, R => {
        let (alpha, z) = parse_point::<R>(a, &ctx)?;
        let (table, terms) = table_with_terms(&alpha, &z, a.n, &ctx)?;
        for k in 0..table.len() {
            report.push(vec![k.to_string(), round_to_digits(&table.b[k], sig), round_to_digits(&table.a[k], sig)]);
        }
        terms
    });
    report.params = point_params("recurrence", a, sig);
    report.diagnostics = vec![("max_series_terms", terms.to_string())];
    report.summary = format!(
        "b_k, a_k for k < {} with alpha={} z={} at {} digits",
        a.n, a.alpha, a.z, a.precision.digits
    );
    Ok(report)
}

fn table_with_terms<R: Real>(
    alpha: &R,
    z: &R,
    n: usize,
    ctx: &PrecisionContext,
) -> tgquad::Result<(tgquad::recurrence::RecurrenceTable<R>, usize)> {
    if n == 0 {
        return Err(tgquad::Error::Domain {
            function: "recurrence",
            reason: "n must be at least 1".into(),
        });
    }
    let mom = modified_moments(alpha, z, 2 * n, ctx)?;
    let basis = shifted_jacobi_support(alpha, 2 * n - 1, ctx)?;
    let table = modified_chebyshev(&mom, &basis, n, ctx)?;
    Ok((table, mom.max_series_terms))
}

fn gauss(a: &PointArgs) -> Result<Report, Failure> {
    let ctx = PrecisionContext::new(a.precision.digits)?;
    let sig = sig_of(&a.precision);
    let mut report = Report::new(&["node", "weight"]);
    let (terms, sweeps) = with_real!(ctx, R => {
        let (alpha, z) = parse_point::<R>(a, &ctx)?;
        let (table, terms) = table_with_terms(&alpha, &z, a.n, &ctx)?;
        let rule = gauss_rule(&table, &ctx)?;
        for (x, w) in rule.nodes.iter().zip(&rule.weights) {
            report.push(vec![round_to_digits(x, sig), round_to_digits(w, sig)]);
        }
        (terms, rule.sweeps)
    });
    report.params = point_params("gauss", a, sig);
    report.diagnostics = vec![("max_series_terms", terms.to_string()), ("eigen_sweeps", sweeps.to_string())];
    report.summary = format!(
        "{}-point Gauss rule for alpha={} z={} at {} digits",
        a.n, a.alpha, a.z, a.precision.digits
    );
    Ok(report)
}

fn sweep(a: &SweepArgs) -> Result<Report, Failure> {
    let ctx = PrecisionContext::new(a.precision.digits)?;
    let sig = sig_of(&a.precision);
    let grid = match a.grid_step {
        Some(h) => {
            if !h.is_finite() || h <= 0.0 {
                return Err(tgquad::Error::Domain {
                    function: "grid",
                    reason: format!("step must be positive, got {h}"),
                }
                .into());
            }
            stepped_grid(h, (a.t_max / h + 1e-9).floor() as usize + 1)?
        }
        None => linspace_grid(a.t_max, a.grid_points)?,
    };
    let points = grid.len();
    let mut report = Report::new(&["z", "k", "b", "a"]);
    with_real!(ctx, R => {
        let surface = build_surface_on_grid::<R>(a.alpha, grid, a.n, &ctx)?;
        for (z, table) in surface.grid.iter().zip(&surface.tables) {
            for k in 0..table.len() {
                report.push(vec![z.to_string(), k.to_string(), round_to_digits(&table.b[k], sig), round_to_digits(&table.a[k], sig)]);
            }
        }
    });
    report.params = vec![
        ("command", "sweep".to_owned()),
        ("alpha", a.alpha.to_string()),
        ("n", a.n.to_string()),
        ("t_max", a.t_max.to_string()),
        ("grid_points", points.to_string()),
        ("digits", a.precision.digits.to_string()),
        ("sig", sig.to_string()),
    ];
    report.summary = format!("b_k(z), a_k(z) for k < {} on {} grid points in [0, {}]", a.n, points, a.t_max);
    Ok(report)
}

fn verify(a: &VerifyArgs) -> Result<Report, Failure> {
    let r = max_relative_error(a.alpha, a.z, a.n, a.precision.digits, a.ref_digits)?;
    let sig = a.precision.sig.unwrap_or(5).clamp(1, 17);
    let mut report = Report::new(&["alpha", "z", "n", "digits", "ref_digits", "max_rel_err", "coefficient", "k"]);
    report.push(vec![
        a.alpha.to_string(),
        a.z.to_string(),
        a.n.to_string(),
        a.precision.digits.to_string(),
        a.ref_digits.to_string(),
        round_to_digits(&r.max_rel_err, sig),
        r.argmax.0.as_str().to_owned(),
        r.argmax.1.to_string(),
    ]);
    report.params = vec![
        ("command", "verify".to_owned()),
        ("alpha", a.alpha.to_string()),
        ("z", a.z.to_string()),
        ("n", a.n.to_string()),
        ("digits", a.precision.digits.to_string()),
        ("ref_digits", a.ref_digits.to_string()),
        ("sig", sig.to_string()),
    ];
    report.summary = format!(
        "max relative error {} at {}_{} (digits={} vs {})",
        round_to_digits(&r.max_rel_err, sig),
        r.argmax.0.as_str(),
        r.argmax.1,
        a.precision.digits,
        a.ref_digits
    );
    Ok(report)
}

fn integrate(a: &IntegrateArgs) -> Result<Report, Failure> {
    let p = &a.point;
    let ctx = PrecisionContext::new(p.precision.digits)?;
    let sig = sig_of(&p.precision);
    let mut report = Report::new(&["quad", "exact", "relerr"]);
    with_real!(ctx, R => {
        let (alpha, z) = parse_point::<R>(p, &ctx)?;
        let coeffs = a.coeffs.iter().map(|c| R::parse(c.trim(), &ctx)).collect::<tgquad::Result<Vec<R>>>()?;
        let (table, _) = table_with_terms(&alpha, &z, p.n, &ctx)?;
        let rule = gauss_rule(&table, &ctx)?;
        let quad = rule.integrate(|x| coeffs.iter().rev().fold(R::from_int(0, &ctx), |acc, c| acc * x + c));
        let mut exact = R::from_int(0, &ctx);
        for (i, c) in coeffs.iter().enumerate() {
            exact += monomial_moment(&alpha, &z, i, &ctx)? * c;
        }
        let relerr = relative_deviation(&quad, &exact);
        report.push(vec![round_to_digits(&quad, sig), round_to_digits(&exact, sig), round_to_digits(&relerr, 5)]);
    });
    report.params = point_params("integrate", p, sig);
    report.params.push(("coeffs", a.coeffs.join(",")));
    report.summary = format!(
        "{}-point rule applied to a degree-{} polynomial",
        p.n,
        a.coeffs.len().saturating_sub(1)
    );
    Ok(report)
}
