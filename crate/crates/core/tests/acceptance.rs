//! Acceptance criteria. Each test prints one `PASS`/`FAIL` line; run with
//! `cargo test -p monad-slice --test acceptance -- --nocapture` to see them.

use std::process::Command;
use std::time::{Duration, Instant};

use monad_slice::census::{
    dimension_formulas, family_check, fiber_census, witness_pipeline, RunOptions,
};
use monad_slice::field::{Field, PrimeField, Rationals, DEFAULT_PRIME};
use monad_slice::matrix::Matrix;
use monad_slice::monad::{build_gamma, monad_condition};
use monad_slice::rng::SeededRng;
use monad_slice::slice::{apply_group, fiber_system, residual, GroupElement, SliceData, SlicePart};

fn verdict(id: u32, name: &str, ok: bool, detail: String) {
    println!("criterion {id} [{name}]: {} {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {id} failed: {detail}");
}

fn residual_zero_point<F: Field>(f: &F, n: usize, rng: &mut SeededRng) -> SliceData<F> {
    let half = SlicePart::random(f, n, rng).unwrap();
    let kernel = fiber_system(&half).kernel_basis();
    let mut c = vec![f.zero(); n * (n + 3)];
    for v in &kernel {
        let w = f.sample(rng);
        for (ci, vi) in c.iter_mut().zip(v) {
            *ci = f.add(ci, &f.mul(&w, vi));
        }
    }
    SliceData::new(half, SlicePart::from_coords(f, n, &c).unwrap()).unwrap()
}

#[test]
fn criterion_1_fiber_dimension_census() {
    let f = PrimeField::new(DEFAULT_PRIME).unwrap();
    let start = Instant::now();
    let mut ok = true;
    let mut detail = Vec::new();
    for (n, expected) in [(4, 10), (5, 10), (6, 9), (7, 7)] {
        let cert = fiber_census(&f, n, 100, 1, &RunOptions::default()).unwrap();
        let hits = cert.fiber_dims.get(&expected).copied().unwrap_or(0);
        ok &= hits >= 99;
        detail.push(format!("n={n}: {hits}/100 at dim {expected}"));
    }
    let elapsed = start.elapsed();
    ok &= elapsed < Duration::from_secs(10);
    verdict(1, "fiber census", ok, format!("{} in {elapsed:?}", detail.join(", ")));
}

#[test]
fn criterion_2_shape_bookkeeping() {
    let f = PrimeField::default();
    let start = Instant::now();
    let mut ok = true;
    let mut rng = SeededRng::from_seed(2);
    for n in 1..=12 {
        let half = SlicePart::random(&f, n, &mut rng).unwrap();
        ok &= fiber_system(&half).shape() == (3 * n * (n - 1) / 2, n * (n + 3));
        let d = dimension_formulas(n).unwrap();
        ok &= d.dim_ybar == d.dim_in + d.dim_h;
    }
    let d8 = dimension_formulas(8).unwrap();
    ok &= d8.dim_ybar == 92 && d8.dim_sigma0_large == 92;
    let elapsed = start.elapsed();
    ok &= elapsed < Duration::from_secs(1);
    verdict(2, "shape bookkeeping", ok, format!("n=1..12 in {elapsed:?}"));
}

#[test]
fn criteria_3_and_4_rational_witness_and_transversality() {
    let q = Rationals::with_window(5);
    let mut ok3 = true;
    let mut ok4 = true;
    let mut d3 = Vec::new();
    let mut d4 = Vec::new();
    for (n, rank) in [(4, 18), (5, 30), (6, 45), (7, 63)] {
        let start = Instant::now();
        let cert = witness_pipeline(&q, n, 7, &RunOptions { points: 32, record_timings: false }).unwrap();
        let elapsed = start.elapsed();
        let w = cert.witness.unwrap();
        let pass = w.residual_zero
            && w.pencil.finite_ok
            && w.monad_ok
            && w.point_ranks_ok
            && w.points == 32
            && elapsed < Duration::from_secs(60);
        ok3 &= pass;
        d3.push(format!("n={n}: fiber_dim={} {}{elapsed:?}", w.fiber_dim, if pass { "" } else { "checks failed, " }));
        ok4 &= w.jacobian_rank == rank;
        d4.push(format!("n={n}: rank {}/{rank}", w.jacobian_rank));
    }
    verdict(3, "characteristic-zero witness", ok3, d3.join(", "));
    verdict(4, "Jacobian transversality", ok4, d4.join(", "));
}

#[test]
fn criterion_5_large_charge_family() {
    let f = PrimeField::new(DEFAULT_PRIME).unwrap();
    let start = Instant::now();
    let mut ok = true;
    let mut detail = Vec::new();
    for n in 8..=12 {
        let cert = family_check(&f, n, 20, 1, &RunOptions::default()).unwrap();
        let pass = cert.family_check == Some(true) && cert.fiber_dims.get(&4) == Some(&20);
        ok &= pass;
        detail.push(format!("n={n}: {:?}", cert.fiber_dims));
    }
    let elapsed = start.elapsed();
    ok &= elapsed < Duration::from_secs(30);
    verdict(5, "n >= 8 canonical family", ok, format!("{} in {elapsed:?}", detail.join(", ")));
}

#[test]
fn criterion_6_monad_equivalence() {
    let f = PrimeField::default();
    let mut discrepancies = 0;
    let mut zero_points = 0;
    for n in [2, 4, 8] {
        let mut rng = SeededRng::substream(6, &format!("acceptance/6/n={n}"));
        for _ in 0..100 {
            let x = residual_zero_point(&f, n, &mut rng);
            let y = SliceData::random(&f, n, &mut rng).unwrap();
            for p in [&x, &y] {
                let res_zero = residual(p).unwrap().is_zero();
                zero_points += res_zero as usize;
                if monad_condition(&build_gamma(p)).unwrap() != res_zero {
                    discrepancies += 1;
                }
            }
        }
    }
    verdict(
        6,
        "monad condition <=> residual zero",
        discrepancies == 0 && zero_points >= 300,
        format!("{discrepancies} discrepancies over 600 points ({zero_points} on the slice)"),
    );
}

#[test]
fn criterion_7_group_invariance() {
    let f = PrimeField::default();
    let n = 4;
    let mut rng = SeededRng::substream(7, "acceptance/7");
    let mut ok = true;
    for _ in 0..100 {
        let x = residual_zero_point(&f, n, &mut rng);
        ok &= residual(&x).unwrap().is_zero();
        let e = GroupElement::random(&f, n, &mut rng).unwrap();
        let g = e.g();
        ok &= g.matmul(&g.transpose()).unwrap() == Matrix::identity(&f, n);
        let [s, t, u, v] = e.m();
        ok &= f.sub(&f.mul(s, v), &f.mul(t, u)) == 1;
        ok &= residual(&apply_group(&x, &e).unwrap()).unwrap().is_zero();
    }
    verdict(7, "slice invariance under O(n) x SL(2)", ok, "100 points at n=4".into());
}

#[test]
fn criterion_8_determinism() {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_monad-slice"))
            .args(["census", "--n-min", "4", "--n-max", "8", "--trials", "100", "--seed", "1"])
            .output()
            .unwrap()
    };
    let (a, b) = (run(), run());
    let ok = a.status.code() == Some(0)
        && b.status.code() == Some(0)
        && !a.stdout.is_empty()
        && a.stdout == b.stdout;
    verdict(8, "byte-identical certificates", ok, format!("{} bytes", a.stdout.len()));
}
