//! Acceptance suite: exact checks with one PASS/FAIL line per criterion.

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::Instant;

use impbox_core::gen;
use impbox_core::{
    pbox_to_interval, reconstruct_interval, reduced_permutation_set, Capacity, Constraint,
    CredalPolytope, Event, FiniteSpace, GeneralizedPBox, MassAssignment, Permutation,
    PossibilityDistribution, ProbabilityVector, Rational,
};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Verdict = Result<String, String>;
type Criterion = Box<dyn FnOnce(&mut ChaCha8Rng) -> Verdict>;

fn ensure(condition: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if condition {
        Ok(())
    } else {
        Err(message())
    }
}

fn tenths(values: &[i64]) -> Vec<Rational> {
    values
        .iter()
        .map(|&v| Rational::new(v.into(), 10.into()))
        .collect()
}

fn die_space() -> FiniteSpace {
    FiniteSpace::indexed(6).unwrap()
}

fn die_pbox() -> GeneralizedPBox {
    GeneralizedPBox::from_functions(
        &die_space(),
        tenths(&[0, 0, 2, 5, 5, 10]),
        tenths(&[3, 3, 7, 9, 9, 10]),
    )
    .unwrap()
}

/// The six focal sets of the die, written out by hand.
fn die_masses() -> MassAssignment {
    let s = die_space();
    let set = |labels: &[&str]| s.event_from_labels(labels).unwrap();
    MassAssignment::new(
        &s,
        [
            (set(&["x1", "x2", "x3"]), Rational::new(2.into(), 10.into())),
            (
                set(&["x1", "x2", "x3", "x4", "x5"]),
                Rational::new(1.into(), 10.into()),
            ),
            (set(&["x3", "x4", "x5"]), Rational::new(2.into(), 10.into())),
            (
                set(&["x3", "x4", "x5", "x6"]),
                Rational::new(2.into(), 10.into()),
            ),
            (set(&["x4", "x5", "x6"]), Rational::new(2.into(), 10.into())),
            (set(&["x6"]), Rational::new(1.into(), 10.into())),
        ],
    )
    .unwrap()
}

fn random_space(rng: &mut ChaCha8Rng, sizes: std::ops::RangeInclusive<usize>) -> FiniteSpace {
    FiniteSpace::indexed(rng.gen_range(sizes)).unwrap()
}

/// `{P | P(A) ≤ Π(A) for every event A}`.
fn dominated_by(pi: &PossibilityDistribution) -> CredalPolytope {
    let space = pi.space();
    let constraints = space
        .events()
        .filter(|a| !a.is_empty() && !a.is_full())
        .map(|a| Constraint {
            lo: Rational::zero(),
            hi: pi.possibility(&a),
            event: a,
        })
        .collect();
    CredalPolytope::new(space, constraints).unwrap()
}

fn sample(
    rng: &mut ChaCha8Rng,
    space: &FiniteSpace,
    members: &MassAssignment,
) -> ProbabilityVector {
    match rng.gen_range(0..3) {
        0 => gen::random_set_member(rng, members),
        1 => gen::probability(rng, space, 5),
        _ => gen::probability(rng, space, 20),
    }
}

fn pbox_decomposition() -> Verdict {
    let (upper, lower) = die_pbox().to_possibility_pair();
    ensure(upper.values() == tenths(&[3, 3, 7, 9, 9, 10]), || {
        format!("upper {:?}", upper.values())
    })?;
    ensure(lower.values() == tenths(&[10, 10, 10, 8, 8, 5]), || {
        format!("lower {:?}", lower.values())
    })?;
    Ok("both distributions exact".into())
}

fn pbox_random_set() -> Verdict {
    let pb = die_pbox();
    let expected = die_masses();
    ensure(pb.to_random_set() == expected, || {
        format!("thresholds gave {:?}", pb.to_random_set())
    })?;
    ensure(pb.sweep_random_set() == expected, || {
        format!("sweep gave {:?}", pb.sweep_random_set())
    })?;
    Ok("six focal sets from both constructions".into())
}

fn lower_probability_paths(pb: &GeneralizedPBox) -> Result<(), String> {
    let masses = pb.to_random_set();
    let poly = pb.to_polytope();
    for a in pb.space().events() {
        let lower = pb.lower_prob(&a);
        let oracle = poly.lower_envelope(&a).map_err(|e| e.to_string())?.value;
        let values = [masses.bel(&a), pb.lower_prob_via_possibility(&a), oracle];
        ensure(values.iter().all(|v| *v == lower), || {
            format!(
                "{a}: chain {lower}, belief {}, possibility {}, oracle {}",
                values[0], values[1], values[2]
            )
        })?;
    }
    Ok(())
}

fn three_way_equality(rng: &mut ChaCha8Rng) -> Verdict {
    lower_probability_paths(&die_pbox()).map_err(|e| format!("die: {e}"))?;
    let boxes = 200;
    for i in 0..boxes {
        let space = random_space(rng, 1..=6);
        let pb = {
            let d = rng.gen_range(2..=8);
            gen::pbox(rng, &space, d)
        };
        lower_probability_paths(&pb).map_err(|e| format!("p-box {i}: {e}"))?;
    }
    Ok(format!("die on 64 events and {boxes} random p-boxes"))
}

fn membership_equivalence(rng: &mut ChaCha8Rng) -> Verdict {
    let vectors = 1000;
    let mut boxes = vec![die_pbox()];
    for _ in 0..50 {
        let space = random_space(rng, 2..=6);
        boxes.push({
            let d = rng.gen_range(2..=6);
            gen::pbox(rng, &space, d)
        });
    }
    let (mut inside, mut outside) = (0, 0);
    for (i, pb) in boxes.iter().enumerate() {
        let (upper, lower) = pb.to_possibility_pair();
        let poly = pb.to_polytope();
        let masses = pb.to_random_set();
        for _ in 0..vectors {
            let p = sample(rng, pb.space(), &masses);
            let member = poly.is_member(&p);
            ensure(member == (upper.contains(&p) && lower.contains(&p)), || {
                format!("p-box {i}: {:?} membership {member}", p.values())
            })?;
            if member {
                inside += 1;
            } else {
                outside += 1;
            }
        }
    }
    Ok(format!(
        "{} p-boxes, {inside} members and {outside} non-members",
        boxes.len()
    ))
}

fn interval_bounds(rng: &mut ChaCha8Rng) -> Verdict {
    let count = 100;
    for i in 0..count {
        let space = random_space(rng, 1..=5);
        let li = {
            let d = rng.gen_range(3..=10);
            gen::reachable_interval(rng, &space, d)
        };
        let poly = li.to_polytope();
        for a in space.events() {
            let (lo, hi) = li.event_bounds(&a).map_err(|e| e.to_string())?;
            let oracle_lo = poly.lower_envelope(&a).map_err(|e| e.to_string())?.value;
            let oracle_hi = poly.upper_envelope(&a).map_err(|e| e.to_string())?.value;
            ensure(lo == oracle_lo && hi == oracle_hi, || {
                format!("interval {i}, {a}: [{lo}, {hi}] vs oracle [{oracle_lo}, {oracle_hi}]")
            })?;
        }
        let lower = li.lower_capacity().map_err(|e| e.to_string())?;
        ensure(lower.is_2_monotone(), || {
            format!("interval {i}: lower capacity not 2-monotone")
        })?;
    }
    Ok(format!("{count} reachable intervals"))
}

fn interval_reconstruction(rng: &mut ChaCha8Rng) -> Verdict {
    let count = 100;
    let mut samples = 0;
    for i in 0..count {
        let n = 2 + i % 4;
        let space = FiniteSpace::indexed(n).unwrap();
        let li = {
            let d = rng.gen_range(3..=10);
            gen::reachable_interval(rng, &space, d)
        };
        let all: Vec<Permutation> = Permutation::all(n).collect();
        let reduced = reduced_permutation_set(n);
        ensure(reduced.len() == n.div_ceil(2), || {
            format!("n = {n}: {} orderings", reduced.len())
        })?;
        for (name, sigmas) in [("all orderings", &all), ("reduced set", &reduced)] {
            let back = reconstruct_interval(&li, sigmas).map_err(|e| e.to_string())?;
            ensure(back == li, || {
                format!("interval {i} ({name}): {back:?} vs {li:?}")
            })?;
        }
        let sigma = gen::permutation(rng, n);
        let pb = impbox_core::interval_to_sigma_pbox(&li, &sigma).map_err(|e| e.to_string())?;
        let (pb_poly, outer_poly) = (pb.to_polytope(), pbox_to_interval(&pb).to_polytope());
        for _ in 0..20 {
            let p = gen::interval_member(rng, &li);
            ensure(li.to_polytope().is_member(&p), || {
                format!("interval {i}: sampler left the interval")
            })?;
            ensure(pb_poly.is_member(&p) && outer_poly.is_member(&p), || {
                format!(
                    "interval {i}: {:?} escapes the outer approximations",
                    p.values()
                )
            })?;
            samples += 1;
        }
    }
    Ok(format!(
        "{count} intervals, n = 2..5, {samples} chain samples"
    ))
}

/// `μ(∪ A_i) ≥ Σ_{∅≠I} (−1)^{|I|+1} μ(∩_{i∈I} A_i)` for every family of
/// `k` events, repetitions allowed.
fn k_monotone_brute_force(c: &Capacity, k: usize) -> bool {
    let full = c.space().full_bits();
    let value = |bits: u32| &c.values()[bits as usize];
    let mut family = vec![0u32; k];
    fn next(family: &mut [u32], full: u32) -> bool {
        for i in (0..family.len()).rev() {
            if family[i] < full {
                family[i] += 1;
                for j in i + 1..family.len() {
                    family[j] = family[i];
                }
                return true;
            }
        }
        false
    }
    loop {
        let union = family.iter().fold(0, |acc, a| acc | a);
        let mut bound = Rational::zero();
        for subset in 1u32..(1 << k) {
            let meet = (0..k)
                .filter(|i| subset & (1 << i) != 0)
                .fold(full, |acc, i| acc & family[i]);
            if subset.count_ones() % 2 == 1 {
                bound += value(meet);
            } else {
                bound -= value(meet);
            }
        }
        if *value(union) < bound {
            return false;
        }
        if !next(&mut family, full) {
            return true;
        }
    }
}

fn mobius_machinery(rng: &mut ChaCha8Rng) -> Verdict {
    let count = 200;
    for i in 0..count {
        let space = random_space(rng, 1..=5);
        let c = gen::capacity(rng, &space, 3);
        let back = c
            .mobius_transform()
            .mobius_inverse()
            .map_err(|e| e.to_string())?;
        ensure(back == c, || {
            format!("capacity {i}: round trip changed the values")
        })?;
    }
    let (mut belief, mut other) = (0, 0);
    for i in 0..120 {
        let space = random_space(rng, 1..=4);
        let c = if i % 2 == 0 {
            gen::capacity(rng, &space, 2)
        } else {
            gen::mass_assignment(rng, &space, 5, 6).to_capacity()
        };
        let nonnegative = c.mobius_transform().is_nonnegative();
        let brute = k_monotone_brute_force(&c, space.len());
        ensure(
            c.is_infty_monotone() == nonnegative && nonnegative == brute,
            || {
                format!(
                    "capacity {i}: flag {}, masses {nonnegative}, brute force {brute}",
                    c.is_infty_monotone()
                )
            },
        )?;
        if brute {
            belief += 1;
        } else {
            other += 1;
        }
    }
    Ok(format!(
        "{count} round trips; {belief} belief functions and {other} others cross-checked"
    ))
}

fn possibility_axioms(rng: &mut ChaCha8Rng) -> Verdict {
    let count = 200;
    let mut samples = 0;
    for i in 0..count {
        let space = random_space(rng, 1..=5);
        let mut pi: Vec<Rational> = (0..space.len())
            .map(|_| Rational::new(rng.gen_range(0..=5).into(), 5.into()))
            .collect();
        pi[rng.gen_range(0..space.len())] = Rational::one();
        let d = PossibilityDistribution::new(&space, pi).map_err(|e| e.to_string())?;
        let events: Vec<Event> = space.events().collect();
        for a in &events {
            for b in &events {
                let union = a.union(b).unwrap();
                let meet = a.intersection(b).unwrap();
                ensure(
                    d.possibility(&union) == d.possibility(a).max(d.possibility(b)),
                    || format!("distribution {i}: possibility of {a} ∪ {b}"),
                )?;
                ensure(
                    d.necessity(&meet) == d.necessity(a).min(d.necessity(b)),
                    || format!("distribution {i}: necessity of {a} ∩ {b}"),
                )?;
            }
        }
        let masses = d.to_random_set();
        ensure(masses.contour() == d.values(), || {
            format!("distribution {i}: contour changed")
        })?;
        if i % 4 == 0 {
            let oracle = dominated_by(&d);
            for _ in 0..25 {
                let p = sample(rng, &space, &masses);
                ensure(d.contains(&p) == oracle.is_member(&p), || {
                    format!("distribution {i}: {:?}", p.values())
                })?;
                samples += 1;
            }
        }
    }
    Ok(format!(
        "{count} distributions, {samples} membership samples"
    ))
}

fn interval_consistency() -> Verdict {
    let from_pbox = pbox_to_interval(&die_pbox());
    let from_masses = die_masses().to_interval();
    ensure(from_pbox == from_masses, || {
        format!("{from_pbox:?} vs {from_masses:?}")
    })?;
    Ok("die intervals identical".into())
}

fn cli_goldens() -> Verdict {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data");
    let example = data.join("example1.json");
    let example = example.to_str().unwrap();
    let cases: [(&[&str], &str); 3] = [
        (&["convert", example, "--to", "mass"], "example1.mass.json"),
        (
            &["query", example, "--event", "x3,x4,x5", "--bound", "lower"],
            "example1.query.txt",
        ),
        (&["verify", example], "example1.verify.txt"),
    ];
    for (args, golden) in cases {
        let out = Command::new(env!("CARGO_BIN_EXE_impbox"))
            .args(args)
            .env_remove("IMPBOX_MAX_N")
            .output()
            .map_err(|e| e.to_string())?;
        let expected = std::fs::read(data.join(golden)).map_err(|e| e.to_string())?;
        ensure(out.status.code() == Some(0), || {
            format!("{args:?} exited with {:?}", out.status.code())
        })?;
        ensure(out.stdout == expected, || {
            format!("{args:?} differs from {golden}")
        })?;
    }
    Ok("convert, query and verify outputs byte-identical".into())
}

fn main() -> ExitCode {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    let criteria: Vec<(&str, Criterion)> = vec![
        (
            "die p-box splits into its two possibility distributions",
            Box::new(|_| pbox_decomposition()),
        ),
        (
            "die p-box random set from thresholds and from the sweep",
            Box::new(|_| pbox_random_set()),
        ),
        (
            "lower probability: random set = chain = possibility pair = oracle",
            Box::new(three_way_equality),
        ),
        (
            "p-box membership = membership in both possibility sets",
            Box::new(membership_equivalence),
        ),
        (
            "interval event bounds = oracle envelopes, 2-monotone",
            Box::new(interval_bounds),
        ),
        (
            "interval recovered from ordering p-boxes, outer chain holds",
            Box::new(interval_reconstruction),
        ),
        (
            "Möbius round trip and infinite monotonicity",
            Box::new(mobius_machinery),
        ),
        (
            "possibility axioms, contour round trip, membership test",
            Box::new(possibility_axioms),
        ),
        (
            "p-box interval = random set interval on the die",
            Box::new(|_| interval_consistency()),
        ),
        ("command-line golden outputs", Box::new(|_| cli_goldens())),
    ];
    let start = Instant::now();
    let mut failures = 0;
    for (number, (title, check)) in criteria.into_iter().enumerate() {
        let number = number + 1;
        let timer = Instant::now();
        match check(&mut rng) {
            Ok(detail) => println!(
                "PASS {number:>2} {title}: {detail} [{:.1?}]",
                timer.elapsed()
            ),
            Err(reason) => {
                failures += 1;
                println!("FAIL {number:>2} {title}: {reason}");
            }
        }
    }
    println!(
        "{} of 10 criteria passed in {:.1?}",
        10 - failures,
        start.elapsed()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
