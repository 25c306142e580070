//! Experiments over random slice data: dimension bookkeeping, the census of
//! fiber-system kernel dimensions, the large-charge family check and the
//! explicit witness pipeline.
//!
//! Every trial draws from its own substream keyed by the master seed and a
//! label such as `census/n=4/trial=17`, so results do not depend on trial
//! order and certificates are reproducible byte for byte.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{same_span, span_rank};
use crate::monad::{build_gamma, monad_condition, pencil_check_slice, point_rank_check, PencilReport};
use crate::rng::{SeededRng, ALGORITHM_ID};
use crate::slice::{
    canonical_fiber_solutions, equation_count, fiber_system, jacobian, part_len, residual, SliceData,
    SlicePart,
};

pub const DEFAULT_TRIALS: usize = 100;
pub const DEFAULT_FAMILY_TRIALS: usize = 20;
pub const DEFAULT_POINTS: usize = 32;

/// Version string stamped into certificates; names the generator too.
pub fn version_string() -> String {
    format!("monad-slice {} ({ALGORITHM_ID})", env!("CARGO_PKG_VERSION"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimensionRecord {
    pub n: usize,
    pub dim_in: usize,
    pub dim_h: usize,
    pub dim_ybar: usize,
    /// `n(9-n)/2`; negative for `n > 9`.
    pub expected_fiber: i64,
    pub n_equations: usize,
    pub n_fiber_unknowns: usize,
    pub n_full_unknowns: usize,
    pub dim_base: usize,
    pub dim_sigma0_large: usize,
}

pub fn dimension_formulas(n: usize) -> Result<DimensionRecord> {
    if n == 0 {
        return Err(Error::Domain("charge must be at least 1".into()));
    }
    let tri = n * (n - 1) / 2;
    let rec = DimensionRecord {
        n,
        dim_in: 8 * n - 3,
        dim_h: tri + 3,
        dim_ybar: 8 * n + tri,
        expected_fiber: (n as i64) * (9 - n as i64) / 2,
        n_equations: 3 * tri,
        n_fiber_unknowns: n * (n + 3),
        n_full_unknowns: 2 * n * (n + 3),
        dim_base: n * (n + 3),
        dim_sigma0_large: n * (n + 3) + 4,
    };
    assert_eq!(rec.dim_ybar, rec.dim_in + rec.dim_h);
    assert_eq!(rec.n_fiber_unknowns as i64 - rec.n_equations as i64, rec.expected_fiber);
    assert_eq!(rec.dim_base + 4, rec.dim_sigma0_large);
    Ok(rec)
}

/// Kernel dimension of the fiber system at a generic half: `n(9-n)/2` up to
/// `n = 8`, and 4 from `n = 8` on.
pub fn expected_generic_fiber(n: usize) -> usize {
    let formula = (n as i64) * (9 - n as i64) / 2;
    formula.max(4) as usize
}

fn seed_as_string<S: Serializer>(seed: &u64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&seed.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub fiber_dim: usize,
    pub residual_zero: bool,
    pub pencil: PencilReport,
    pub monad_ok: bool,
    pub point_ranks_ok: bool,
    pub points: usize,
    pub jacobian_rank: usize,
    pub jacobian_full: bool,
    /// False outside the charges `4..=7` the unirationality argument covers.
    pub in_theorem_range: bool,
    pub evidence: String,
}

impl WitnessReport {
    pub fn all_ok(&self) -> bool {
        self.residual_zero
            && self.pencil.finite_ok
            && self.monad_ok
            && self.point_ranks_ok
            && self.jacobian_full
    }
}

/// Record of one run. Serialized with exactly the keys below.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub version: String,
    #[serde(serialize_with = "seed_as_string")]
    pub seed: u64,
    pub field: String,
    pub n: usize,
    pub trials: usize,
    pub fiber_dims: BTreeMap<usize, usize>,
    pub family_check: Option<bool>,
    pub witness: Option<WitnessReport>,
    pub timings_ms: BTreeMap<String, u64>,
}

impl Certificate {
    fn new<F: Field>(field: &F, n: usize, seed: u64, trials: usize) -> Self {
        Self {
            version: version_string(),
            seed,
            field: field.describe(),
            n,
            trials,
            fiber_dims: BTreeMap::new(),
            family_check: None,
            witness: None,
            timings_ms: BTreeMap::new(),
        }
    }

    /// Most frequent kernel dimension, smallest on ties.
    pub fn modal_dimension(&self) -> Option<usize> {
        self.fiber_dims
            .iter()
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))
            .map(|(&d, _)| d)
    }

    /// At least 99% of trials hit the generic kernel dimension.
    pub fn census_ok(&self) -> bool {
        let hits = self.fiber_dims.get(&expected_generic_fiber(self.n)).copied().unwrap_or(0);
        self.trials > 0 && hits * 100 >= self.trials * 99
    }

    /// Every recorded expectation holds.
    pub fn expectations_met(&self) -> bool {
        if let Some(w) = &self.witness {
            return w.all_ok() && w.fiber_dim == expected_generic_fiber(self.n);
        }
        if let Some(fc) = self.family_check {
            return fc;
        }
        self.census_ok()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    pub points: usize,
    /// Wall-clock stage timings make certificates non-reproducible, so they
    /// are only recorded on request.
    pub record_timings: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self { points: DEFAULT_POINTS, record_timings: false }
    }
}

struct Stopwatch {
    enabled: bool,
    start: Instant,
    laps: BTreeMap<String, u64>,
}

impl Stopwatch {
    fn new(enabled: bool) -> Self {
        Self { enabled, start: Instant::now(), laps: BTreeMap::new() }
    }

    fn lap(&mut self, stage: &str) {
        if self.enabled {
            let ms = self.start.elapsed().as_millis() as u64;
            *self.laps.entry(stage.to_string()).or_default() += ms;
            self.start = Instant::now();
        }
    }
}

/// Kernel dimension of the fiber system at a half drawn from `rng`.
pub fn sample_fiber_dimension<F: Field>(field: &F, n: usize, rng: &mut SeededRng) -> Result<usize> {
    let half = SlicePart::random(field, n, rng)?;
    let sys = fiber_system(&half);
    Ok(sys.cols() - sys.rank())
}

pub fn fiber_census<F: Field>(
    field: &F,
    n: usize,
    trials: usize,
    seed: u64,
    opts: &RunOptions,
) -> Result<Certificate> {
    if trials == 0 {
        return Err(Error::Domain("at least one trial is required".into()));
    }
    dimension_formulas(n)?;
    let mut cert = Certificate::new(field, n, seed, trials);
    let mut clock = Stopwatch::new(opts.record_timings);
    for t in 0..trials {
        let mut rng = SeededRng::substream(seed, &format!("census/n={n}/trial={t}"));
        let d = sample_fiber_dimension(field, n, &mut rng)?;
        *cert.fiber_dims.entry(d).or_default() += 1;
    }
    clock.lap("census");
    cert.timings_ms = clock.laps;
    Ok(cert)
}

/// Whether the fiber kernel over `half` is exactly the span of the four
/// canonical solutions. Returns the kernel dimension alongside.
pub fn kernel_is_canonical_family<F: Field>(half: &SlicePart<F>) -> (usize, bool) {
    let field = half.field();
    let n = half.n();
    let kernel = fiber_system(half).kernel_basis();
    let canon: Vec<Vec<F::Elem>> =
        canonical_fiber_solutions(half).iter().map(SlicePart::coords).collect();
    let dim = kernel.len();
    let ok = dim == 4
        && span_rank(field, part_len(n), &canon) == 4
        && same_span(field, part_len(n), &kernel, &canon);
    (dim, ok)
}

pub fn family_check<F: Field>(
    field: &F,
    n: usize,
    trials: usize,
    seed: u64,
    opts: &RunOptions,
) -> Result<Certificate> {
    if n < 8 {
        return Err(Error::Domain(format!(
            "the four-dimensional family is only claimed for n >= 8, got {n}"
        )));
    }
    if trials == 0 {
        return Err(Error::Domain("at least one trial is required".into()));
    }
    let mut cert = Certificate::new(field, n, seed, trials);
    let mut clock = Stopwatch::new(opts.record_timings);
    let mut all = true;
    for t in 0..trials {
        let mut rng = SeededRng::substream(seed, &format!("family/n={n}/trial={t}"));
        let half = SlicePart::random(field, n, &mut rng)?;
        let (dim, ok) = kernel_is_canonical_family(&half);
        *cert.fiber_dims.entry(dim).or_default() += 1;
        all &= ok;
    }
    clock.lap("family");
    cert.family_check = Some(all);
    cert.timings_ms = clock.laps;
    Ok(cert)
}

/// A nonzero vector of 4 coordinates.
pub fn random_point<F: Field>(field: &F, rng: &mut SeededRng) -> Vec<F::Elem> {
    loop {
        let v: Vec<F::Elem> = (0..4).map(|_| field.sample(rng)).collect();
        if v.iter().any(|x| !field.is_zero(x)) {
            return v;
        }
    }
}

/// Draws a half, then a random element of the fiber kernel over it.
/// Returns the slice point and the kernel dimension.
pub fn sample_witness<F: Field>(field: &F, n: usize, rng: &mut SeededRng) -> Result<(SliceData<F>, usize)> {
    let half = SlicePart::random(field, n, rng)?;
    let kernel = fiber_system(&half).kernel_basis();
    if kernel.is_empty() {
        return Err(Error::WitnessUnavailable(format!("fiber kernel is trivial for n = {n}")));
    }
    let mut coords = vec![field.zero(); part_len(n)];
    for v in &kernel {
        let w = field.sample(rng);
        if field.is_zero(&w) {
            continue;
        }
        for (c, x) in coords.iter_mut().zip(v) {
            *c = field.add(c, &field.mul(&w, x));
        }
    }
    let fiber = SlicePart::from_coords(field, n, &coords)?;
    Ok((SliceData::new(half, fiber)?, kernel.len()))
}

/// Runs every check on an explicit slice point.
pub fn certify_point<F: Field>(
    x: &SliceData<F>,
    fiber_dim: usize,
    points: usize,
    rng: &mut SeededRng,
    clock: Option<&mut BTreeMap<String, u64>>,
) -> Result<WitnessReport> {
    let field = x.field();
    let n = x.n();
    let mut sw = Stopwatch::new(clock.is_some());
    let residual_zero = residual(x)?.is_zero();
    sw.lap("residual");
    let pencil = pencil_check_slice(x)?;
    sw.lap("pencil");
    let gamma = build_gamma(x);
    let monad_ok = monad_condition(&gamma)?;
    sw.lap("monad");
    let mut point_ranks_ok = true;
    for _ in 0..points {
        let v = random_point(field, rng);
        point_ranks_ok &= point_rank_check(&gamma, &v)?;
    }
    sw.lap("point_ranks");
    let jacobian_rank = jacobian(x).rank();
    sw.lap("jacobian");
    if let Some(c) = clock {
        c.extend(sw.laps);
    }
    let evidence = if field.characteristic() == 0 {
        "characteristic-zero witness"
    } else {
        "evidence (characteristic p)"
    };
    Ok(WitnessReport {
        fiber_dim,
        residual_zero,
        pencil,
        monad_ok,
        point_ranks_ok,
        points,
        jacobian_rank,
        jacobian_full: jacobian_rank == equation_count(n),
        in_theorem_range: (4..=7).contains(&n),
        evidence: evidence.to_string(),
    })
}

pub fn witness_pipeline<F: Field>(
    field: &F,
    n: usize,
    seed: u64,
    opts: &RunOptions,
) -> Result<Certificate> {
    dimension_formulas(n)?;
    let mut cert = Certificate::new(field, n, seed, 1);
    let mut rng = SeededRng::substream(seed, &format!("witness/n={n}"));
    let mut clock = Stopwatch::new(opts.record_timings);
    let (x, dim) = sample_witness(field, n, &mut rng)?;
    clock.lap("solve");
    let mut laps = clock.laps;
    let report = certify_point(&x, dim, opts.points, &mut rng, opts.record_timings.then_some(&mut laps))?;
    cert.fiber_dims.insert(dim, 1);
    cert.witness = Some(report);
    cert.timings_ms = laps;
    Ok(cert)
}
