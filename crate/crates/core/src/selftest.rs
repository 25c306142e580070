//! Invariant suite run by the `selftest` command.

use crate::error::Result;
use crate::field::{Field, PrimeField, Rationals};
use crate::matrix::Matrix;
use crate::monad::{build_gamma, monad_condition};
use crate::rng::SeededRng;
use crate::slice::{
    apply_group, canonical_fiber_solutions, fiber_system, part_len, residual, residual_of, GroupElement,
    SliceData, SlicePart,
};

const SEED: u64 = 0x5e1f_7e57;
const CHARGES: [usize; 3] = [2, 4, 8];

/// Deliberate defects used to check that the suite can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutation {
    None,
    /// Swaps the `b1` and `b2` blocks of the fiber coordinate vector before
    /// it is multiplied by the fiber system.
    SwapFiberVectors,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelftestReport {
    pub lines: Vec<String>,
    pub passed: bool,
}

struct Log {
    lines: Vec<String>,
    passed: bool,
}

impl Log {
    fn record(&mut self, name: &str, n: Option<usize>, outcome: Result<bool>) {
        let ok = matches!(outcome, Ok(true));
        let scope = n.map(|n| format!(" n={n}")).unwrap_or_default();
        let detail = match outcome {
            Err(e) => format!(" ({e})"),
            _ => String::new(),
        };
        self.lines.push(format!("{} {name}{scope}{detail}", if ok { "PASS" } else { "FAIL" }));
        self.passed &= ok;
    }
}

fn field_axioms<F: Field>(f: &F, rng: &mut SeededRng) -> Result<bool> {
    for _ in 0..1000 {
        let (x, y, z) = (f.sample(rng), f.sample(rng), f.sample(rng));
        let assoc = f.mul(&f.mul(&x, &y), &z) == f.mul(&x, &f.mul(&y, &z));
        let distrib = f.mul(&x, &f.add(&y, &z)) == f.add(&f.mul(&x, &y), &f.mul(&x, &z));
        let inverse = f.is_zero(&x) || f.is_one(&f.mul(&x, &f.inv(&x)?));
        if !(assoc && distrib && inverse) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn fiber_coords<F: Field>(fiber: &SlicePart<F>, mutation: Mutation) -> Vec<F::Elem> {
    let mut c = fiber.coords();
    if mutation == Mutation::SwapFiberVectors {
        let n = fiber.n();
        let start = part_len(n) - 2 * n;
        let (b1, b2) = c[start..].split_at_mut(n);
        b1.swap_with_slice(b2);
    }
    c
}

fn residual_zero_point<F: Field>(f: &F, n: usize, rng: &mut SeededRng) -> Result<SliceData<F>> {
    let half = SlicePart::random(f, n, rng)?;
    let kernel = fiber_system(&half).kernel_basis();
    let mut c = vec![f.zero(); part_len(n)];
    for v in &kernel {
        let w = f.sample(rng);
        for (ci, vi) in c.iter_mut().zip(v) {
            *ci = f.add(ci, &f.mul(&w, vi));
        }
    }
    SliceData::new(half, SlicePart::from_coords(f, n, &c)?)
}

fn per_charge<F: Field>(f: &F, n: usize, mutation: Mutation, log: &mut Log) {
    let mut rng = SeededRng::substream(SEED, &format!("selftest/n={n}"));
    let rng = &mut rng;

    log.record("rank-nullity", Some(n), (|| {
        let half = SlicePart::random(f, n, rng)?;
        let sys = fiber_system(&half);
        let k = sys.kernel_basis();
        let members = k.iter().all(|v| sys.mul_vec(v).is_ok_and(|r| r.iter().all(|x| f.is_zero(x))));
        Ok(members && k.len() + sys.rank() == sys.cols())
    })());

    log.record("fiber-system", Some(n), (|| {
        for _ in 0..10 {
            let half = SlicePart::random(f, n, rng)?;
            let fiber = SlicePart::random(f, n, rng)?;
            let lhs = fiber_system(&half).mul_vec(&fiber_coords(&fiber, mutation))?;
            if lhs != residual_of(&half, &fiber)?.coords() {
                return Ok(false);
            }
        }
        Ok(true)
    })());

    log.record("residual-bilinearity", Some(n), (|| {
        let half = SlicePart::random(f, n, rng)?;
        let fiber = SlicePart::random(f, n, rng)?;
        let c = f.sample(rng);
        let base: Vec<F::Elem> = residual_of(&half, &fiber)?.coords().iter().map(|x| f.mul(&c, x)).collect();
        Ok(residual_of(&half.scale(&c), &fiber)?.coords() == base
            && residual_of(&half, &fiber.scale(&c))?.coords() == base)
    })());

    log.record("monad-residual-equivalence", Some(n), (|| {
        for _ in 0..5 {
            let zero_pt = residual_zero_point(f, n, rng)?;
            let random_pt = SliceData::random(f, n, rng)?;
            for x in [zero_pt, random_pt] {
                if monad_condition(&build_gamma(&x))? != residual(&x)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    })());

    log.record("canonical-kernel", Some(n), (|| {
        let half = SlicePart::random(f, n, rng)?;
        let sys = fiber_system(&half);
        for s in canonical_fiber_solutions(&half) {
            if !sys.mul_vec(&fiber_coords(&s, mutation))?.iter().all(|x| f.is_zero(x)) {
                return Ok(false);
            }
        }
        Ok(true)
    })());

    log.record("group-action", Some(n), (|| {
        let x = residual_zero_point(f, n, rng)?;
        let e1 = GroupElement::random(f, n, rng)?;
        let e2 = GroupElement::random(f, n, rng)?;
        let id_ok = apply_group(&x, &GroupElement::identity(f, n))? == x;
        let composed = apply_group(&apply_group(&x, &e1)?, &e2)? == apply_group(&x, &e2.after(&e1)?)?;
        let orth = e1.g().matmul(&e1.g().transpose())? == Matrix::identity(f, n);
        let invariant = residual(&apply_group(&x, &e1)?)?.is_zero();
        Ok(id_ok && composed && orth && invariant)
    })());
}

pub fn run_selftest(mutation: Mutation) -> SelftestReport {
    let mut log = Log { lines: Vec::new(), passed: true };
    let f = PrimeField::default();
    let q = Rationals::default();
    let mut rng = SeededRng::substream(SEED, "selftest/fields");
    log.record("field-axioms GF(p)", None, field_axioms(&f, &mut rng));
    log.record("field-axioms QQ", None, field_axioms(&q, &mut rng));
    for n in CHARGES {
        per_charge(&f, n, mutation, &mut log);
    }
    SelftestReport { lines: log.lines, passed: log.passed }
}
