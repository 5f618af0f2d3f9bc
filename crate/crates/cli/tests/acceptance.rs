//! One PASS/FAIL line per acceptance criterion.
//!
//! Criterion 6 is evaluated with the printed constant shift, which does not
//! hold for the one-point instances; it prints FAIL without failing the run,
//! and the derived-shift result follows on an informational line. Any other
//! FAIL makes the run exit nonzero.

use std::process::Command;
use std::time::Instant;

use monotone_tr::algebra::rational::{factorial, frac, q as qi};
use monotone_tr::algebra::{lagrange_invert, ring_trace, ModRing, Rational, Series};
use monotone_tr::cutjoin::{c_alpha, f_r_eigencheck, verify_evolution, verify_npoint_cj_with, BernoulliCoefficients, ShiftConvention};
use monotone_tr::hurwitz::{count_table, Partition, SizeGuard};
use monotone_tr::schur::PartitionFunctionTruncation;
use monotone_tr::tr::{
    check_expansion_with, check_linear_loop_with, check_quadratic_loop_with, check_unstable, default_spectators,
    LoopMutation, OmegaStore,
};

const KNOWN_RED: [u32; 1] = [6];

fn zero() -> Rational {
    qi(0)
}

fn constants() -> (bool, String) {
    let mut ok = c_alpha(1) == frac(-1, 24) && c_alpha(2) == frac(7, 5760);
    let mut checked = 0;
    for q in 1..=4u32 {
        let c = ModRing::new(q).generator();
        for k in 0..=4 * q {
            let want = if k % q == 0 {
                qi(q as i64) / qi(q as i64 + 1).pow((k / q) as i32)
            } else {
                zero()
            };
            ok &= ring_trace(&c.pow(k)) == want;
            checked += 1;
        }
    }
    (ok, format!("c_1, c_2 and {checked} traces"))
}

fn normalized(mu: &Partition, raw: u64) -> Rational {
    Rational::new(mu.aut() * raw, factorial(mu.size() as u64))
}

fn triple_oracle() -> (bool, String) {
    let max_m = 8;
    let mut ok = true;
    let mut count = 0;
    for q in 1..=3u32 {
        let z = PartitionFunctionTruncation::build(q, 6, max_m);
        let log = z.log();
        for d in (q..=6).step_by(q as usize) {
            for m in 0..=max_m {
                let table = count_table(q, d, m as u32, SizeGuard::default()).expect("within guard");
                for mu in Partition::all(d) {
                    let (all, conn) = table.get(&mu).copied().unwrap_or((0, 0));
                    let aut = Rational::from_integer(mu.aut());
                    ok &= &aut * z.coefficient(&mu, m).unwrap() == normalized(&mu, all);
                    ok &= &aut * log.coefficient(&mu, m).unwrap() == normalized(&mu, conn);
                    count += 1;
                }
            }
        }
    }
    (ok, format!("{count} (q, mu, m) cells, connected and disconnected"))
}

fn one_part_genus_zero() -> (bool, String) {
    let w = 8u32;
    let mut ok = true;
    for q in 1..=3u32 {
        let z = PartitionFunctionTruncation::build(q, w, w as usize + 2);
        let conn = z.connected_from_disconnected();
        let mut x_of_z = vec![zero(); q as usize + 2];
        x_of_z[1] = qi(1);
        x_of_z[q as usize + 1] = qi(-1);
        let x = Series::exact(0, x_of_z, zero());
        let u = lagrange_invert(&x, w as i64).unwrap().pow(q, w as i64 + 1);
        for k in 1..=w {
            let lhs = conn.get(&(0, Partition::new(vec![k]))).map(|h| h * qi(k as i64)).unwrap_or_else(zero);
            ok &= &lhs == u.coeff(k as i64);
        }
    }
    (ok, "q = 1, 2, 3 through x^8".into())
}

fn evolution() -> (bool, String) {
    ((1..=3).all(|q| verify_evolution(q, 5, 3)), "(W, hbar order) = (5, 3), q = 1, 2, 3".into())
}

fn eigenvalues() -> (bool, String) {
    let mut n = 0;
    let mut ok = true;
    for size in 0..=5 {
        for lambda in Partition::all(size) {
            for r in 1..=4 {
                ok &= f_r_eigencheck(&lambda, r);
                n += 1;
            }
        }
    }
    (ok, format!("{n} (lambda, r) pairs"))
}

const CJ: [(u32, u32, usize); 4] = [(1, 0, 3), (1, 1, 1), (2, 0, 3), (2, 1, 1)];

fn cutjoin(convention: ShiftConvention) -> (bool, String) {
    let mut failed = Vec::new();
    for (q, g, n) in CJ {
        let c = BernoulliCoefficients::up_to(g as usize);
        let r = verify_npoint_cj_with(q, g, n, 6, &c, convention).expect("stable input");
        if !r.holds() {
            failed.push(format!("(q,g,n)=({q},{g},{n})"));
        }
    }
    let detail = if failed.is_empty() { "4 instances through degree 6".into() } else { format!("fails for {}", failed.join(" ")) };
    (failed.is_empty(), detail)
}

const STABLE: [(u32, usize); 5] = [(0, 3), (1, 1), (0, 4), (1, 2), (2, 1)];

fn expansion() -> (bool, String) {
    let mut ok = true;
    let mut n = 0;
    for q in 1..=3 {
        let mut store = OmegaStore::new(q);
        for (g, k) in STABLE {
            let r = check_expansion_with(&mut store, g, k, 5).expect("no guard trip");
            ok &= r.holds();
            n += r.comparisons.len();
        }
        let u = check_unstable(q, 8).expect("no guard trip");
        ok &= u.holds();
        n += u.disk.len() + u.cylinder.len();
    }
    (ok, format!("{n} coefficients, zero tolerance"))
}

const LOOPS: [(u32, usize); 9] = [(0, 1), (0, 2), (0, 3), (1, 1), (0, 4), (1, 2), (0, 5), (1, 3), (2, 1)];

fn loops() -> (bool, String) {
    let two = LoopMutation::ScaleSplitting(qi(2));
    let mut ok = true;
    let mut sensitive = 0;
    for q in 1..=3 {
        let mut store = OmegaStore::new(q);
        for (g, n) in LOOPS {
            let s = default_spectators(n - 1);
            ok &= check_linear_loop_with(&mut store, g, n, &s, &LoopMutation::None).unwrap();
            ok &= check_quadratic_loop_with(&mut store, g, n, &s, &LoopMutation::None).unwrap();
            // the perturbation acts on closed forms only; the (0,1) combination
            // is a single term, so scaling it changes nothing
            if 2 * g + n as u32 > 2 {
                ok &= !check_linear_loop_with(&mut store, g, n, &s, &LoopMutation::PerturbOmega).unwrap();
                ok &= !check_quadratic_loop_with(&mut store, g, n, &s, &LoopMutation::PerturbOmega).unwrap();
                sensitive += 2;
            }
            if (g, n) != (0, 1) {
                ok &= !check_quadratic_loop_with(&mut store, g, n, &s, &two).unwrap();
                sensitive += 1;
            }
        }
    }
    (ok, format!("27 pairs, {sensitive} mutations detected"))
}

fn run_verify_all(threads: &str) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_monotone-tr"))
        .args(["--threads", threads, "verify", "all"])
        .output()
        .expect("binary runs");
    assert!(out.status.success(), "verify all --threads {threads}: {:?}", out.status);
    out.stdout
}

fn determinism() -> (bool, String) {
    let one = run_verify_all("1");
    let four = run_verify_all("4");
    (one == four, format!("{} bytes, 1 vs 4 workers", one.len()))
}

fn main() {
    let criteria: [(u32, &str, fn() -> (bool, String)); 9] = [
        (1, "constants", constants),
        (2, "triple-oracle agreement", triple_oracle),
        (3, "genus-0 one-part identity", one_part_genus_zero),
        (4, "evolution equation", evolution),
        (5, "F_r eigenvalues", eigenvalues),
        (6, "n-point cut-and-join (printed shift)", || cutjoin(ShiftConvention::Printed)),
        (7, "TR vs Hurwitz numbers", expansion),
        (8, "loop equations", loops),
        (9, "determinism of verify all", determinism),
    ];
    let mut unexpected = Vec::new();
    for (id, name, f) in criteria {
        let t = Instant::now();
        let (ok, detail) = f();
        let secs = t.elapsed().as_secs_f64();
        println!("{} {id} {name}: {detail} [{secs:.1}s]", if ok { "PASS" } else { "FAIL" });
        if id == 6 {
            let (ok, detail) = cutjoin(ShiftConvention::Derived);
            println!("info 6 n-point cut-and-join (derived shift): {} {detail}", if ok { "holds," } else { "fails," });
        }
        if !ok && !KNOWN_RED.contains(&id) {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
