//! End-to-end acceptance checks: each test prints exactly one PASS/FAIL line.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::Instant;

use ffpotents::charsum::{
    compute_mq, compute_nq, consecutive_nonsquare_pairs, jacobi_sum, mixed_t_cancellation_check,
    mq_bound_positive, nq_bound_positive, nu, union_deficiency_check, weil_bound_check,
    closed_form_st_check, u4_jacobi_identity,
};
use ffpotents::field::{build_field, prime_power_decompose, FieldCtx};
use ffpotents::potent::{n_potents, potent_cardinality};
use ffpotents::verify::weil_exhaustive;

fn verdict(name: &str, ok: bool) {
    println!("{name}: {}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "{name}");
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ffpotents"))
}

fn build(q: u32) -> FieldCtx {
    let (p, v) = prime_power_decompose(q as u64).unwrap();
    build_field(p as u32, v).unwrap()
}

fn prime_powers(lo: u32, hi: u32) -> Vec<u32> {
    (lo..=hi).filter(|&q| prime_power_decompose(q as u64).is_some()).collect()
}

#[test]
fn acceptance_01_m4_search_matches_golden() {
    let start = Instant::now();
    let out = bin()
        .args(["search", "--m", "4", "--limit", "1000", "--boundary", "appendix"])
        .output()
        .unwrap();
    let elapsed = start.elapsed();
    let stdout = String::from_utf8(out.stdout).unwrap();
    // everything except the wall-time line must match the golden file byte
    // for byte, hit order included
    let body: String =
        stdout.lines().filter(|l| !l.starts_with("done in")).map(|l| format!("{l}\n")).collect();
    let golden = include_str!("../testdata/search_m4_limit1000_appendix.txt");
    let ok = out.status.success() && body == golden && elapsed.as_secs() <= 60;
    verdict("criterion 1: m=4 search to 1000 reproduces the ten ordered triples", ok);
}

#[test]
fn acceptance_02_m5_search_pair_set() {
    let start = Instant::now();
    let out = bin().args(["search", "--m", "5", "--limit", "10000"]).output().unwrap();
    let elapsed = start.elapsed();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let got: BTreeSet<(u32, u32)> = stdout
        .lines()
        .filter(|l| !l.starts_with("done in"))
        .map(|l| {
            let f: Vec<u32> = l.split_whitespace().map(|t| t.parse().unwrap()).collect();
            assert_eq!(f[1], 5, "m column");
            (f[0], f[2])
        })
        .collect();
    let want: BTreeSet<(u32, u32)> = [
        (7, 4),
        (9, 3),
        (9, 5),
        (5, 2),
        (5, 3),
        (13, 5),
        (13, 7),
        (17, 9),
        (25, 9),
        (25, 13),
        (29, 15),
        (41, 21),
        (49, 25),
        (53, 27),
        (73, 37),
        (81, 41),
        (125, 63),
    ]
    .into_iter()
    .collect();
    let ok = out.status.success() && got == want && elapsed.as_secs() <= 300;
    verdict("criterion 2: m=5 search to 10000 yields exactly the seventeen pairs", ok);
}

#[test]
fn acceptance_03_nq_mq_identities() {
    let mut ok = true;
    for q in prime_powers(4, 500) {
        if q % 2 == 1 && (q - 1) % 3 == 0 {
            let nq = compute_nq(&build(q)).unwrap();
            ok &= nq.direct == nq.via_neq && nq.direct == nq.via_stterms;
        }
        if q <= 300 && (q - 1) % 3 == 0 {
            let mq = compute_mq(&build(q)).unwrap();
            ok &= mq.direct == mq.via_meq;
        }
    }
    verdict("criterion 3: N_q and M_q identities exact for all applicable q", ok);
}

#[test]
fn acceptance_04_closed_forms_and_mixed_t() {
    let mut ok = true;
    for q in prime_powers(4, 300) {
        if (q - 1) % 3 != 0 {
            continue;
        }
        if q % 2 == 1 {
            ok &= closed_form_st_check(&build(q)).unwrap();
        }
        ok &= mixed_t_cancellation_check(&build(q)).unwrap();
    }
    verdict("criterion 4: closed S/T forms and the 12 mixed-pair bounds hold to q = 300", ok);
}

#[test]
fn acceptance_05_jacobi_suite() {
    let mut ok = true;
    for q in prime_powers(4, 200) {
        if q % 2 == 0 || (q - 1) % 3 != 0 {
            continue;
        }
        let ctx = build(q);
        ok &= jacobi_sum(&ctx, 1).unwrap().norm() == q as i64;
        ok &= jacobi_sum(&ctx, 2).unwrap().norm() == q as i64;
        ok &= u4_jacobi_identity(&ctx).unwrap();
    }
    verdict("criterion 5: Jacobi norms and the U_4 identity and bound hold to q = 200", ok);
}

#[test]
fn acceptance_06_weil_bounds() {
    let mut ok = true;
    // All monic f, plus unit-scaling closure: multiplying f by a nonzero
    // constant multiplies the character sum by a unit and keeps the root
    // count, so the monic sweep decides every f with the bounds below
    // checked explicitly for every leading coefficient on degree <= 2.
    for q in [5u32, 7, 9, 11, 13, 25] {
        let ctx = build(q);
        ok &= weil_exhaustive(&ctx, 4, 2).unwrap() == 0;
        ok &= scaling_closure(&ctx, 2);
    }
    for q in [7u32, 13, 25] {
        let ctx = build(q);
        ok &= weil_exhaustive(&ctx, 3, 3).unwrap() == 0;
        ok &= scaling_closure(&ctx, 3);
    }
    verdict("criterion 6: Weil bound exhaustive over square-free and cube-free f", ok);
}

fn scaling_closure(ctx: &FieldCtx, d: u8) -> bool {
    let q = ctx.q() as u64;
    for t in 0..q * q {
        let f = vec![(t % q) as u32, (t / q) as u32, 1];
        let base = weil_bound_check(ctx, &f, d);
        for c in 1..ctx.q() {
            let g: Vec<u32> = f.iter().map(|&co| ctx.mul(c, co)).collect();
            let scaled = weil_bound_check(ctx, &g, d);
            let same = match (&base, &scaled) {
                (Ok(a), Ok(b)) => a == b,
                (Err(_), Err(_)) => true,
                _ => false,
            };
            if !same {
                return false;
            }
        }
    }
    true
}

#[test]
fn acceptance_07_thresholds_and_direct_positivity() {
    let mut ok = true;
    // printed N-bound: positive for every q >= 125 and not everywhere below
    // (it first turns positive at q = 124); printed M-bound: positive exactly
    // from q = 262
    ok &= (125..=100_000u64).all(nq_bound_positive);
    ok &= !nq_bound_positive(123);
    ok &= (262..=100_000u64).all(mq_bound_positive);
    ok &= !mq_bound_positive(261);
    for q in prime_powers(4, 1000) {
        if (q - 1) % 3 != 0 {
            continue;
        }
        if q % 2 == 1 && q > 124 {
            ok &= compute_nq(&build(q)).unwrap().direct > 0;
        }
        if q > 261 {
            ok &= compute_mq(&build(q)).unwrap().direct > 0;
        }
    }
    verdict("criterion 7: bound thresholds and direct positivity to q = 1000", ok);
}

#[test]
fn acceptance_08_structural_oracles() {
    let mut ok = true;
    // potent closed form vs incremental-power brute force, all n <= 2q
    for q in prime_powers(4, 512) {
        let ctx = build(q);
        let q64 = q as u64;
        let mut brute: Vec<Vec<u32>> = vec![Vec::new(); (2 * q64 + 1) as usize];
        for a in ctx.elements() {
            let mut pw = a;
            for n in 2..=2 * q64 {
                pw = ctx.mul(pw, a);
                if pw == a {
                    brute[n as usize].push(a);
                }
            }
        }
        for n in 2..=2 * q64 {
            let set = n_potents(&ctx, n).unwrap();
            ok &= set.members == brute[n as usize];
            ok &= set.len() as u64 == potent_cardinality(q64, n);
        }
    }
    for q in prime_powers(4, 500) {
        let ctx = build(q);
        if q % 2 == 1 {
            let (direct, formula) = consecutive_nonsquare_pairs(&ctx).unwrap();
            ok &= direct == formula;
        }
        if (q - 1) % 3 == 0 {
            let mut cubes = vec![false; q as usize];
            for b in ctx.elements() {
                cubes[ctx.pow(b, 3) as usize] = true;
            }
            ok &= (1..q)
                .all(|a| nu(&ctx, a).unwrap() == if cubes[a as usize] { 0 } else { 1 });
        }
        if q % 12 == 1 {
            ok &= union_deficiency_check(&ctx).unwrap();
        }
    }
    // uncovered-count linkage: N_q (resp. M_q) equals the number of elements
    // missed by the four translates C_n + k, k in C_4
    for q in prime_powers(4, 200) {
        if (q - 1) % 3 != 0 {
            continue;
        }
        let ctx = build(q);
        let (one, z, y) = ctx.cube_roots_of_unity().unwrap();
        let shifts = [0, one, z, y];
        let union_miss = |n: u64| -> i64 {
            let cn = n_potents(&ctx, n).unwrap();
            let mut seen = vec![false; q as usize];
            for &k in &shifts {
                for &a in &cn.members {
                    seen[ctx.add(a, k) as usize] = true;
                }
            }
            (q as usize - seen.iter().filter(|&&s| s).count()) as i64
        };
        if q % 2 == 1 {
            ok &= compute_nq(&ctx).unwrap().direct == union_miss((q as u64).div_ceil(2));
        }
        ok &= compute_mq(&ctx).unwrap().direct == union_miss((q as u64).div_ceil(3));
    }
    verdict("criterion 8: brute-force oracles and coverage linkage agree", ok);
}
