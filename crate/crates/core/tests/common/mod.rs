#![allow(dead_code)]

use dds_core::models::CspModel;
use dds_core::{ConstraintSpec, Dfa, Domain, LinearRel, VarRef};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn intro() -> CspModel {
    let mut m = CspModel::new(vec![
        Domain::new([3, 5]),
        Domain::new([3, 4]),
        Domain::new([1, 2]),
        Domain::new([1, 2]),
    ]);
    for i in 0..4 {
        for j in i + 1..4 {
            m.post(ConstraintSpec::Neq(VarRef(i), VarRef(j)));
        }
    }
    m
}

fn pick_vars(rng: &mut ChaCha8Rng, n: usize, lo: usize, hi: usize) -> Vec<VarRef> {
    let k = rng.gen_range(lo..=hi.min(n));
    let mut all: Vec<usize> = (0..n).collect();
    all.shuffle(rng);
    all.truncate(k);
    all.into_iter().map(VarRef).collect()
}

fn product(domains: &[Domain], vars: &[VarRef]) -> Vec<Vec<i64>> {
    let mut rows = vec![Vec::new()];
    for x in vars {
        rows = rows
            .into_iter()
            .flat_map(|r| {
                domains[x.0].iter().map(move |v| {
                    let mut r = r.clone();
                    r.push(v);
                    r
                })
            })
            .collect();
    }
    rows
}

fn random_dfa(rng: &mut ChaCha8Rng, alphabet: &[i64]) -> Dfa {
    let states = rng.gen_range(2..=3);
    let finals: Vec<usize> = (0..states).filter(|_| rng.gen_bool(0.5)).collect();
    let finals = if finals.is_empty() {
        vec![states - 1]
    } else {
        finals
    };
    let mut transitions = Vec::new();
    for from in 0..states {
        for &a in alphabet {
            if rng.gen_bool(0.7) {
                transitions.push((from, a, rng.gen_range(0..states)));
            }
        }
    }
    Dfa::new(states, 0, finals, transitions).expect("well-formed automaton")
}

/// A small random CSP: 4 to 8 variables, domains of at most 4 values from
/// 0..6, and a mix of neq, linear, alldifferent, table and regular
/// constraints (plus slide when `with_slide`).
pub fn random_csp(seed: u64, with_slide: bool) -> CspModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(4..=8);
    let domains: Vec<Domain> = (0..n)
        .map(|_| {
            let size = rng.gen_range(1..=4);
            let mut vals: Vec<i64> = (0..6).collect();
            vals.shuffle(&mut rng);
            Domain::new(vals.into_iter().take(size))
        })
        .collect();
    let mut m = CspModel::new(domains.clone());
    let kinds = if with_slide { 6 } else { 5 };
    for _ in 0..rng.gen_range(1..=n) {
        let c = match rng.gen_range(0..kinds) {
            0 => {
                let v = pick_vars(&mut rng, n, 2, 2);
                ConstraintSpec::Neq(v[0], v[1])
            }
            1 => {
                let vars = pick_vars(&mut rng, n, 2, 4);
                let coeffs: Vec<i64> = vars
                    .iter()
                    .map(|_| *[-2, -1, 1, 1, 2].choose(&mut rng).unwrap())
                    .collect();
                // anchor the right-hand side at a random point so it is often satisfiable
                let point: i64 = vars
                    .iter()
                    .zip(&coeffs)
                    .map(|(x, a)| a * *domains[x.0].values().choose(&mut rng).unwrap())
                    .sum();
                if rng.gen_bool(0.5) {
                    ConstraintSpec::Linear {
                        coeffs,
                        vars,
                        rel: LinearRel::Eq,
                        rhs: point,
                    }
                } else {
                    ConstraintSpec::Linear {
                        coeffs,
                        vars,
                        rel: LinearRel::Leq,
                        rhs: point + rng.gen_range(0..3),
                    }
                }
            }
            2 => ConstraintSpec::AllDifferent(pick_vars(&mut rng, n, 2, 5)),
            3 => {
                let vars = pick_vars(&mut rng, n, 2, 3);
                let tuples: Vec<Vec<i64>> = product(&domains, &vars)
                    .into_iter()
                    .filter(|_| rng.gen_bool(0.5))
                    .collect();
                ConstraintSpec::Table { vars, tuples }
            }
            4 => {
                let vars = pick_vars(&mut rng, n, 2, 5);
                let mut alphabet: Vec<i64> =
                    vars.iter().flat_map(|x| domains[x.0].iter()).collect();
                alphabet.sort_unstable();
                alphabet.dedup();
                let dfa = random_dfa(&mut rng, &alphabet);
                ConstraintSpec::Regular { vars, dfa }
            }
            _ => {
                let vars = pick_vars(&mut rng, n, 3, 6);
                let window_tuples: Vec<Vec<i64>> =
                    product(&vec![Domain::range(0, 5); 2], &[VarRef(0), VarRef(1)])
                        .into_iter()
                        .filter(|_| rng.gen_bool(0.6))
                        .collect();
                ConstraintSpec::Slide {
                    vars,
                    width: 2,
                    window_tuples,
                }
            }
        };
        m.post(c);
    }
    m
}
