//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

use dotpairs::bounds::{
    field_remainder_bound, verify_ell1, verify_ell2, verify_remainder_field, verify_remainder_ring,
    verify_zq_l1, verify_zq_l2,
};
use dotpairs::constructions::{
    random_set, sharp_construction, sharp_lower_bound, zero_construction, zero_exact_count,
};
use dotpairs::counting::{
    brute_force_count, character_decomposition, fast_count, fast_count_with, QRational,
};
use dotpairs::{PointSet, Ring, Strategy};

type Outcome = Result<String, String>;
type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn field(p: u32) -> Arc<Ring> {
    Arc::new(Ring::prime_field(p).unwrap())
}

fn ext(p: u32, k: u32) -> Arc<Ring> {
    Arc::new(Ring::extension_field(p, k, None).unwrap())
}

fn zq(p: u32, l: u32) -> Arc<Ring> {
    Arc::new(Ring::residue_ring(p, l).unwrap())
}

fn grid(ring: Arc<Ring>) -> PointSet {
    let q = ring.q();
    PointSet::new(ring, 2, (0..q).flat_map(|x| (0..q).map(move |y| [x, y]))).unwrap()
}

fn cap(ring: &Ring, d: usize, n: usize) -> usize {
    n.min((ring.q() as usize).pow(d as u32))
}

/// Picks zero or a unit, alternating on `k`.
fn zero_or_unit(ring: &Ring, k: u64) -> u32 {
    if k.is_multiple_of(3) {
        0
    } else {
        let units: Vec<u32> = ring.units().collect();
        units[(k as usize * 7) % units.len()]
    }
}

fn unit(ring: &Ring, k: u64) -> u32 {
    let units: Vec<u32> = ring.units().collect();
    units[(k as usize * 5 + 1) % units.len()]
}

/// II + III against count - n^3/q^2, exactly.
fn remainder_identity(set: &PointSet, alpha: u32, beta: u32) -> bool {
    let dec = character_decomposition(set, alpha, beta);
    let count = fast_count(set, alpha, beta);
    QRational::from_int(count as i128, dec.term_i.den) - dec.term_i == dec.term_ii + dec.term_iii
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let rings = [
        field(3),
        field(5),
        field(7),
        zq(3, 2),
        ext(3, 2),
        field(11),
        ext(5, 2),
        zq(5, 2),
        ext(3, 3),
        zq(3, 3),
    ];
    for trial in 0..200u64 {
        let ring = rings[trial as usize % rings.len()].clone();
        let d = 2 + (trial / 10 % 2) as usize;
        let n = cap(&ring, d, 1 + (trial as usize * 37) % 60);
        let set = random_set(ring.clone(), d, n, trial).unwrap();
        let alpha = zero_or_unit(&ring, trial);
        let beta = zero_or_unit(&ring, trial / 2 + 1);
        let brute = brute_force_count(&set, alpha, beta);
        let fast = fast_count(&set, alpha, beta);
        let total = character_decomposition(&set, alpha, beta).total;
        if fast != brute || total.as_integer() != Some(brute as i128) {
            return Err(format!(
                "trial {trial} (q={}, d={d}, n={n}): brute {brute}, fast {fast}, char {total}",
                ring.q()
            ));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if secs > 60.0 {
        return Err(format!("200 instances took {secs:.1} s"));
    }
    Ok(format!("200 instances agree, {secs:.2} s"))
}

fn anchors() -> Outcome {
    let f5 = grid(field(5));
    let z9 = grid(zq(3, 2));
    let got = [
        brute_force_count(&f5, 1, 1),
        brute_force_count(&f5, 0, 0),
        brute_force_count(&z9, 1, 1),
    ];
    if got == [600, 1225, 5832] {
        Ok("600, 1225, 5832".into())
    } else {
        Err(format!("got {got:?}"))
    }
}

fn sharpness() -> Outcome {
    let mut checked = 0;
    for q in [7u32, 11, 31, 101] {
        let ring = field(q);
        for n in [3, q as usize / 2, q as usize] {
            for (alpha, beta) in [(1, 2), (1, 1)] {
                let set =
                    sharp_construction(ring.clone(), n, alpha, beta).map_err(|e| e.to_string())?;
                let count = fast_count(&set, alpha, beta);
                let bound = sharp_lower_bound(n);
                if set.len() != n || count < bound {
                    return Err(format!("q={q} n={n}: count {count} < {bound}"));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} sets meet the lower bound"))
}

fn zero_construction_exact() -> Outcome {
    let mut ratios = Vec::new();
    for q in [5u32, 7, 101] {
        let ring = field(q);
        let max = 2 * (q as usize - 1);
        for n in 0..=max {
            let set = zero_construction(ring.clone(), n).map_err(|e| e.to_string())?;
            let count = fast_count(&set, 0, 0);
            if count != zero_exact_count(n) {
                return Err(format!("q={q} n={n}: {count} != {}", zero_exact_count(n)));
            }
        }
        let ratio = zero_exact_count(max) as f64 / (max as f64).powi(3);
        if !(0.2..=0.3).contains(&ratio) {
            return Err(format!("q={q}: ratio {ratio}"));
        }
        ratios.push(format!("{ratio:.3}"));
    }
    Ok(format!(
        "exact for all n; ratios at n = 2(q-1): {}",
        ratios.join(", ")
    ))
}

fn lemma_sweeps() -> Outcome {
    let fields = [
        field(3),
        field(5),
        field(7),
        field(11),
        field(13),
        ext(2, 2),
        ext(2, 3),
        ext(3, 2),
        ext(2, 4),
        ext(5, 2),
    ];
    let mut displayed_fails = 0;
    let mut gamma_zero = 0;
    for trial in 0..500u64 {
        let ring = fields[trial as usize % fields.len()].clone();
        let d = 2 + (trial % 4 == 3) as usize;
        let n = cap(&ring, d, 1 + (trial as usize * 53) % 120);
        let set = random_set(ring.clone(), d, n, 10_000 + trial).unwrap();
        let gamma = zero_or_unit(&ring, trial);
        gamma_zero += (gamma == 0) as usize;
        let r1 = verify_ell1(&set, gamma).map_err(|e| e.to_string())?;
        let r2 = verify_ell2(&set, gamma).map_err(|e| e.to_string())?;
        if !r1.holds || !r2.holds {
            return Err(format!(
                "trial {trial} (q={}, n={n}, gamma={gamma}): ell1 {}, ell2 {}",
                ring.q(),
                r1.summary(),
                r2.summary()
            ));
        }
        displayed_fails += r2
            .side_checks
            .iter()
            .filter(|c| !c.binding && !c.holds)
            .count();
    }
    let rings = [zq(3, 2), zq(3, 3)];
    for trial in 0..200u64 {
        let ring = rings[trial as usize % 2].clone();
        let n = cap(&ring, 2, 1 + (trial as usize * 41) % 300);
        let set = random_set(ring.clone(), 2, n, 20_000 + trial).unwrap();
        let gamma = unit(&ring, trial);
        let r1 = verify_zq_l1(&set, gamma).map_err(|e| e.to_string())?;
        let r2 = verify_zq_l2(&set, gamma).map_err(|e| e.to_string())?;
        if !r1.holds || !r2.holds {
            return Err(format!(
                "trial {trial} (q={}, n={n}): zq-l1 {}, zq-l2 {}",
                ring.q(),
                r1.summary(),
                r2.summary()
            ));
        }
    }
    Ok(format!(
        "500 field sets ({gamma_zero} with gamma = 0), 200 ring sets; \
         n q lambda form exceeded on {displayed_fails} gamma = 0 instances"
    ))
}

fn remainder_bounds() -> Outcome {
    let fields = [
        field(5),
        field(7),
        ext(2, 4),
        field(23),
        ext(5, 2),
        field(31),
        ext(7, 2),
        field(53),
        ext(3, 4),
        field(97),
        field(101),
    ];
    for trial in 0..200u64 {
        let ring = fields[trial as usize % fields.len()].clone();
        let d = 2 + (trial % 5 == 4) as usize;
        let n = cap(&ring, d, 2 + (trial as usize * 211) % 3000);
        let set = random_set(ring.clone(), d, n, 30_000 + trial).unwrap();
        let alpha = zero_or_unit(&ring, trial);
        let beta = zero_or_unit(&ring, trial + 1);
        let r = verify_remainder_field(&set, alpha, beta).map_err(|e| e.to_string())?;
        if !r.holds || !remainder_identity(&set, alpha, beta) {
            return Err(format!(
                "trial {trial} (q={}, n={n}): {}",
                ring.q(),
                r.summary()
            ));
        }
    }
    let rings = [zq(3, 2), zq(3, 3)];
    for trial in 0..100u64 {
        let ring = rings[trial as usize % 2].clone();
        let n = cap(&ring, 2, 2 + (trial as usize * 67) % 700);
        let set = random_set(ring.clone(), 2, n, 40_000 + trial).unwrap();
        let (alpha, beta) = (unit(&ring, trial), unit(&ring, trial + 3));
        let r = verify_remainder_ring(&set, alpha, beta).map_err(|e| e.to_string())?;
        if !r.holds || !remainder_identity(&set, alpha, beta) {
            return Err(format!(
                "trial {trial} (q={}, n={n}): {}",
                ring.q(),
                r.summary()
            ));
        }
    }
    Ok("200 field sets and 100 ring sets within bound; II + III exact on all".into())
}

fn density() -> Outcome {
    let start = Instant::now();
    let ring = field(101);
    let (n, q) = (5000usize, 101f64);
    let main = (n as f64).powi(3) / (q * q);
    let allowed = field_remainder_bound(&ring, 2, n, 1, 1).unwrap() / main;
    let mut errors = Vec::new();
    for trial in 0..10u64 {
        let set = random_set(ring.clone(), 2, n, 500 + trial).unwrap();
        let count = fast_count(&set, 1, 1) as f64;
        let err = (count / main - 1.0).abs();
        if err > allowed {
            return Err(format!(
                "trial {trial}: relative error {err:.4} > {allowed:.4}"
            ));
        }
        errors.push(err);
    }
    let mean = errors.iter().sum::<f64>() / errors.len() as f64;
    let max = errors.iter().cloned().fold(0.0, f64::max);
    let secs = start.elapsed().as_secs_f64();
    let summary = format!("mean {mean:.4}, max {max:.4}, allowed {allowed:.4}, {secs:.2} s");
    if mean > 0.05 || secs > 120.0 {
        Err(summary)
    } else {
        Ok(summary)
    }
}

fn performance(dir: &std::path::Path) -> Outcome {
    let set = random_set(field(101), 2, 5000, 8).unwrap();
    let start = Instant::now();
    let count = fast_count_with(&set, 1, 1, Strategy::Sequential);
    let secs = start.elapsed().as_secs_f64();
    if secs > 5.0 {
        return Err(format!("sequential fast_count took {secs:.2} s"));
    }
    // The CLI refuses the brute-force method above n = 200.
    let big = random_set(field(101), 2, 201, 1).unwrap();
    let path = dir.join("big.json");
    dotpairs::io::write_point_set(&path, &big).unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_dotpairs"))
        .args([
            "count", "--alpha", "1", "--beta", "1", "--method", "brute", "--set",
        ])
        .arg(&path)
        .output()
        .unwrap()
        .status;
    if status.code() != Some(2) {
        return Err(format!("brute force on n = 201 exited with {status}"));
    }
    Ok(format!(
        "count {count} in {secs:.3} s single-threaded; brute refused at n = 201"
    ))
}

fn reproducibility(dir: &std::path::Path) -> Outcome {
    let run = |name: &str| {
        let csv = dir.join(format!("{name}.csv"));
        let out = Command::new(env!("CARGO_BIN_EXE_dotpairs"))
            .args([
                "scan",
                "--q",
                "101",
                "--d",
                "2",
                "--exponents",
                "1.2,1.4,1.6",
                "--trials",
                "10",
                "--seed",
                "42",
                "--alpha",
                "1",
                "--beta",
                "1",
                "--out",
            ])
            .arg(&csv)
            .output()
            .unwrap();
        if !out.status.success() {
            return Err(format!("scan exited with {}", out.status));
        }
        let a = std::fs::read(&csv).unwrap();
        let b = std::fs::read(csv.with_extension("jsonl")).unwrap();
        Ok((a, b))
    };
    let first = run("first")?;
    let second = run("second")?;
    let rows = String::from_utf8_lossy(&first.0).lines().count() - 1;
    if first != second {
        return Err("CSV or JSONL differs between runs".into());
    }
    if rows != 30 {
        return Err(format!("expected 30 rows, got {rows}"));
    }
    Ok(format!("{rows} rows, CSV and JSONL byte-identical"))
}

fn main() {
    let dir = tempfile::tempdir().unwrap();
    let criteria: Vec<(&str, Check)> = vec![
        ("1 oracle equivalence", Box::new(oracle_equivalence)),
        ("2 closed-form anchors", Box::new(anchors)),
        ("3 sharp construction", Box::new(sharpness)),
        ("4 zero construction", Box::new(zero_construction_exact)),
        ("5 lemma sweeps", Box::new(lemma_sweeps)),
        ("6 remainder bounds", Box::new(remainder_bounds)),
        ("7 density behavior", Box::new(density)),
        ("8 performance", Box::new(|| performance(dir.path()))),
        (
            "9 reproducibility",
            Box::new(|| reproducibility(dir.path())),
        ),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        match check() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
