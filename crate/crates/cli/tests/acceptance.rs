//! Acceptance criteria, one PASS/FAIL line each.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use matrovar::chains::{check_strong_sequence, nilpotent_chain, Classification};
use matrovar::chains::{
    classify, is_strong_nilpotent, lifting_constant, lifting_dimension_invariant, solvable_chain,
};
use matrovar::config::config_report;
use matrovar::fixtures::{load, names, random_paving};
use matrovar::gca::{generate_gm, BracketPolynomial};
use matrovar::linalg::{
    int, random_integer_vector, seeded_rng, Rational, RationalMatrix, SampleParams, SeededRng,
};
use matrovar::matroid::{matroid_of_vectors, VectorMap};
use matrovar::realize::{
    evaluated_matrix, in_circuit_variety, lift_vectors, lifting_dimension_at,
    minor_rank_certificate, random_hyperplane_collection, realize, realize_nilpotent,
    realize_stable_special, sample_lift, sample_lifting_point, stable_check, BoundKind,
};
use matrovar::{set, ElementSet, Matroid, Realization};
use rand::Rng;

const WEAK_NILPOTENT: [&str; 4] = ["nr11", "je9", "three_lines7", "sn10"];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn params() -> SampleParams {
    SampleParams::default()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || {
        format!(
            "took {:.2}s, limit {:.0}s",
            t.as_secs_f64(),
            limit.as_secs_f64()
        )
    })
}

fn realizable() -> Vec<Matroid> {
    names().filter(|&n| n != "fano7").map(load).collect()
}

fn pair(m: &Matroid, rng: &mut SeededRng) -> Result<(Realization, Vec<Rational>), String> {
    let r = realize(m, rng, params()).map_err(|e| e.to_string())?;
    let q = sample_lifting_point(&r.vectors, m.rank(), rng, params()).map_err(|e| e.to_string())?;
    Ok((r, q))
}

fn criterion_01() -> Outcome {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_matrovar"))
        .args(["dim", "--fixture", "nr11"])
        .output()
        .map_err(|e| e.to_string())?;
    within(start, Duration::from_secs(1))?;
    ensure(out.status.success(), || {
        format!("exit status {}", out.status)
    })?;
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let r = &v["result"];
    ensure(
        r["dim"] == 5 && r["constants"] == serde_json::json!([1, 2]) && r["terminal_rank"] == 2,
        || format!("payload {r}"),
    )?;
    Ok(format!(
        "dim=5 constants=[1,2] terminal_rank=2 in {:.3}s",
        start.elapsed().as_secs_f64()
    ))
}

fn criterion_02() -> Outcome {
    let start = Instant::now();
    let m = load("nr11");
    let mut vacuous = 0;
    for seed in 0..20 {
        let mut rng = seeded_rng(seed);
        let (r, q) = pair(&m, &mut rng)?;
        let cert = minor_rank_certificate(&m, &r, &q, BoundKind::Thm25, Some((100, &mut rng)))
            .map_err(|e| e.to_string())?;
        ensure(
            cert.rank == 6 && cert.bound == 6 && cert.minor_size == 7,
            || format!("seed {seed}: rank {} bound {}", cert.rank, cert.bound),
        )?;
        ensure(cert.holds && cert.nonzero_minors == 0, || {
            format!("seed {seed}: nonzero minor")
        })?;
        vacuous += usize::from(cert.vacuous);
    }
    within(start, Duration::from_secs(30))?;
    Ok(format!(
        "rank 6 = 11 - 5 on 20 seeds; matrix has 6 rows so no 7-minor exists ({vacuous}/20 vacuous) in {:.1}s",
        start.elapsed().as_secs_f64()
    ))
}

fn criterion_03() -> Outcome {
    let mut summary = Vec::new();
    for name in WEAK_NILPOTENT {
        let m = load(name);
        let expected = lifting_dimension_invariant(&m)
            .map_err(|e| e.to_string())?
            .dim_value;
        let mut rng = seeded_rng(300);
        for _ in 0..10 {
            let r = realize(&m, &mut rng, params()).map_err(|e| e.to_string())?;
            for _ in 0..5 {
                let q = sample_lifting_point(&r.vectors, m.rank(), &mut rng, params())
                    .map_err(|e| e.to_string())?;
                let d = lifting_dimension_at(&m, &r.vectors, &q).map_err(|e| e.to_string())?;
                ensure(d == expected, || format!("{name}: {d} != {expected}"))?;
            }
        }
        summary.push(format!("{name}={expected}"));
    }
    Ok(summary.join(" "))
}

fn criterion_04() -> Outcome {
    let mut count = 0;
    for m in realizable() {
        for seed in 0..20 {
            let mut rng = seeded_rng(seed);
            let (r, q) = pair(&m, &mut rng)?;
            let cert = minor_rank_certificate(&m, &r, &q, BoundKind::Prop68, None)
                .map_err(|e| e.to_string())?;
            ensure(cert.rank <= m.ground_size() - m.rank(), || {
                format!("{:?} seed {seed}: rank {}", m.name(), cert.rank)
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} realizations checked"))
}

fn criterion_05() -> Outcome {
    let start = Instant::now();
    let m = load("three_lines7");
    let gm = generate_gm(&m, 1).map_err(|e| e.to_string())?;
    let target = BracketPolynomial::from_monomials([
        (int(1), vec![[3, 4, 5], [1, 2, 6]]),
        (int(-1), vec![[3, 4, 6], [1, 2, 5]]),
    ]);
    ensure(
        gm.polynomials().any(|p| p.equal_up_to_sign(&target)),
        || "pattern missing".into(),
    )?;
    for seed in 0..20 {
        let r =
            realize_nilpotent(&m, &mut seeded_rng(seed), params()).map_err(|e| e.to_string())?;
        for p in gm.polynomials() {
            let v = p.evaluate(&r).map_err(|e| e.to_string())?;
            ensure(v == int(0), || format!("{p} = {v} at seed {seed}"))?;
        }
    }
    within(start, Duration::from_secs(5))?;
    Ok(format!(
        "{} polynomials, all vanish on 20 realizations",
        gm.entries.len()
    ))
}

fn criterion_06() -> Outcome {
    let fano = classify(&load("fano7"));
    ensure(!fano.solvable && !fano.nilpotent, || {
        "fano classified solvable or nilpotent".into()
    })?;
    let je9 = nilpotent_chain(&load("je9"));
    ensure(je9.terminated_empty && je9.length == 2, || {
        format!("je9 chain {:?}", je9.chain)
    })?;
    let nr = nilpotent_chain(&load("nr11"));
    let expected = vec![
        ElementSet::range(11),
        ElementSet::range(6),
        set![1, 2],
        ElementSet::EMPTY,
    ];
    ensure(nr.chain == expected, || {
        format!("nr11 chain {:?}", nr.chain)
    })?;
    let quad = solvable_chain(&load("quad6"));
    ensure(quad.terminated_empty && quad.length == 1, || {
        format!("quad6 length {}", quad.length)
    })?;
    let tl = solvable_chain(&load("three_lines7"));
    ensure(tl.terminated_empty && tl.length == 2, || {
        format!("three_lines7 length {}", tl.length)
    })?;
    let sn = load("sn10");
    let strong = is_strong_nilpotent(&sn).map_err(|e| e.to_string())?;
    let seq = strong.sequence.clone().unwrap_or_default();
    ensure(strong.strong_nilpotent && seq.len() == 4, || {
        "sn10 not strong-nilpotent".into()
    })?;
    ensure(
        check_strong_sequence(&sn, &seq).map_err(|e| e.to_string())?,
        || "invalid sequence".into(),
    )?;
    Ok("fano, je9, nr11, quad6, three_lines7, sn10 match".into())
}

fn criterion_07() -> Outcome {
    for name in ["je9", "nr11"] {
        let m = load(name);
        for seed in 0..20 {
            let r = realize_nilpotent(&m, &mut seeded_rng(seed), params())
                .map_err(|e| format!("{name} {seed}: {e}"))?;
            let back = matroid_of_vectors(r.dim, &r.vectors).map_err(|e| e.to_string())?;
            ensure(back.circuits() == m.circuits(), || {
                format!("{name} seed {seed} differs")
            })?;
        }
    }
    let kvt = load("kvt7");
    for seed in 0..20 {
        let out = realize_stable_special(&kvt, &mut seeded_rng(seed), params())
            .map_err(|e| format!("kvt7 {seed}: {e}"))?;
        let back = matroid_of_vectors(out.realization.dim, &out.realization.vectors)
            .map_err(|e| e.to_string())?;
        ensure(back.circuits() == kvt.circuits(), || {
            format!("kvt7 seed {seed} differs")
        })?;
        let report = stable_check(&kvt, &out.realization).map_err(|e| e.to_string())?;
        ensure(
            report.stable && report.per_point.values().all(|p| p.ok),
            || format!("kvt7 seed {seed} unstable"),
        )?;
    }
    Ok("je9, nr11, kvt7 round-trip on 20 seeds each; kvt7 stable at every point".into())
}

fn criterion_08() -> Outcome {
    let mut fixtures = 0;
    for m in realizable() {
        let mut rng = seeded_rng(800);
        let (r, q) = pair(&m, &mut rng)?;
        let mat = evaluated_matrix(&m, &r.vectors, &q).map_err(|e| e.to_string())?;
        let kernel = mat.kernel_basis();
        let points = m.ground().to_vec();
        let lift_inside = |z: Vec<Rational>| -> Result<bool, String> {
            let zmap = points.iter().copied().zip(z).collect();
            let lifted: VectorMap = lift_vectors(&r.vectors, &zmap, &q);
            Ok(in_circuit_variety(&m, &lifted)
                .map_err(|e| e.to_string())?
                .inside)
        };
        for _ in 0..50 {
            let coef = random_integer_vector(&mut rng, kernel.len(), 50);
            let mut z = vec![int(0); points.len()];
            for (c, b) in coef.iter().zip(&kernel) {
                for (x, y) in z.iter_mut().zip(b) {
                    *x += c * y;
                }
            }
            ensure(lift_inside(z)?, || {
                format!("{:?}: kernel lift outside", m.name())
            })?;
        }
        if kernel.len() < points.len() {
            let mut outside = 0;
            while outside < 50 {
                let z = random_integer_vector(&mut rng, points.len(), 50);
                if mat
                    .mul_vec(&z)
                    .map_err(|e| e.to_string())?
                    .iter()
                    .all(|x| *x == int(0))
                {
                    continue;
                }
                outside += 1;
                ensure(!lift_inside(z)?, || {
                    format!("{:?}: non-kernel lift inside", m.name())
                })?;
            }
        }
        fixtures += 1;
    }
    Ok(format!(
        "{fixtures} fixtures, 50 kernel and 50 non-kernel lifts each"
    ))
}

fn criterion_09() -> Outcome {
    let pool = realizable();
    let mut rng = seeded_rng(900);
    for i in 0..50 {
        let m = &pool[i % pool.len()];
        let d = m.rank();
        let n = d + 1 + i % 2;
        let r = realize(m, &mut rng, params()).map_err(|e| e.to_string())?;
        let embed = loop {
            let rows: Vec<_> = (0..n)
                .map(|_| random_integer_vector(&mut rng, d, 20))
                .collect();
            let a = RationalMatrix::from_rows(&rows).map_err(|e| e.to_string())?;
            if a.rank() == d {
                break a;
            }
        };
        let e = r.transformed(&embed).map_err(|e| e.to_string())?;
        let q =
            sample_lifting_point(&e.vectors, n, &mut rng, params()).map_err(|e| e.to_string())?;
        let got = lifting_dimension_at(m, &e.vectors, &q).map_err(|e| e.to_string())?;
        ensure(got == d, || {
            format!("{:?} in dim {n}: {got} != {d}", m.name())
        })?;
    }
    for name in WEAK_NILPOTENT {
        let m = load(name);
        let s = config_report(&m).s_points;
        let sub = m.restrict(s).map_err(|e| e.to_string())?;
        let constant = lifting_constant(&m, m.ground()).map_err(|e| e.to_string())?;
        let mut rng = seeded_rng(901);
        for _ in 0..10 {
            let (r, q) = pair(&m, &mut rng)?;
            let left = lifting_dimension_at(&m, &r.vectors, &q).map_err(|e| e.to_string())?;
            let restricted: VectorMap = s.iter().map(|p| (p, r.vectors[&p].clone())).collect();
            let right =
                lifting_dimension_at(&sub, &restricted, &q).map_err(|e| e.to_string())? + constant;
            ensure(left == right, || format!("{name}: {left} != {right}"))?;
        }
    }
    Ok("50 embedded collections; recursion exact on 4 fixtures x 10 samples".into())
}

fn criterion_10() -> Outcome {
    let m = load("je9");
    for seed in 0..20 {
        let mut rng = seeded_rng(seed);
        let (vectors, h) =
            random_hyperplane_collection(&m, &mut rng, params()).map_err(|e| e.to_string())?;
        let q = loop {
            let q = random_integer_vector(&mut rng, 3, 1000);
            if !h.contains(&q) {
                break q;
            }
        };
        let lift = sample_lift(&m, &vectors, &q, &mut rng, params())
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("seed {seed}: no lift"))?;
        let inside = in_circuit_variety(&m, &lift.lifted.vectors)
            .map_err(|e| e.to_string())?
            .inside;
        let cols: Vec<&Vec<Rational>> = lift.lifted.vectors.values().collect();
        ensure(
            inside && matrovar::linalg::rank_of_vectors(&cols) == 3,
            || format!("seed {seed}: bad lift"),
        )?;
    }
    Ok("20 degenerate collections lifted to rank 3 inside the circuit variety".into())
}

fn lattice_violation(c: &Classification) -> Option<&'static str> {
    if c.forest == Some(true) && !c.nilpotent {
        return Some("forest but not nilpotent");
    }
    if c.nilpotent && !c.solvable {
        return Some("nilpotent but not solvable");
    }
    if c.strong_nilpotent == Some(true) && !c.nilpotent {
        return Some("strong-nilpotent but not nilpotent");
    }
    if c.paving && c.weak_nilpotent != c.nilpotent {
        return Some("weak-nilpotent and nilpotent differ");
    }
    None
}

fn criterion_11() -> Outcome {
    let mut matroids: Vec<Matroid> = names().map(load).collect();
    let mut rng = seeded_rng(1100);
    for _ in 0..100 {
        let ground = rng.gen_range(6..=9);
        let rank = rng.gen_range(3..=4);
        matroids.push(random_paving(&mut rng, ground, rank, 12).map_err(|e| e.to_string())?);
    }
    let mut nilpotent = 0;
    for m in &matroids {
        let c = classify(m);
        if let Some(v) = lattice_violation(&c) {
            return Err(format!("{v}: {:?}", m.circuits()));
        }
        nilpotent += usize::from(c.nilpotent);
    }
    Ok(format!(
        "{} matroids ({nilpotent} nilpotent), zero counterexamples",
        matroids.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("dim invariant of nr11", criterion_01),
        ("rank bound on nr11 liftability matrix", criterion_02),
        ("lifting dimension constancy", criterion_03),
        ("rank bound |M| - rank(M)", criterion_04),
        ("bracket polynomial regression", criterion_05),
        ("classification regressions", criterion_06),
        ("realizer round trips", criterion_07),
        ("lift equation equivalence", criterion_08),
        ("embedded collections and recursion", criterion_09),
        ("liftability sampling on je9", criterion_10),
        ("implication lattice", criterion_11),
    ];
    let mut failed = 0;
    for (i, (label, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {:02} PASS {label}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:02} FAIL {label}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
