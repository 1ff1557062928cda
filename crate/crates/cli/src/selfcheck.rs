//! Seeded randomized demo of the library's algebraic laws, runnable from
//! the command line. The full property suites live in the test targets;
//! this is a lightweight reproducible sample of them.

use finprob::algebra::{AlgebraShape, MValue};
use finprob::combinators::{compose_rv, pushforward, OutcomeMap};
use finprob::conditioning::{cond_on_indicator, tower_check};
use finprob::indicator::{satisfiable, Indicator};
use finprob::{Dist, Outcome, OutcomeSpace, RandomVariable, Rational};

const CASES: u32 = 200;
const POINTS: u64 = 8;

/// xorshift64*, plenty for a demo.
struct Rng(u64);

impl Rng {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.0 = x;
        x.wrapping_mul(0x2545_f491_4f6c_dd1d)
    }

    fn below(&mut self, bound: u64) -> u64 {
        self.next() % bound
    }

    fn rational(&mut self) -> Rational {
        let num = self.below(41) as i64 - 20;
        let den = self.below(12) as i64 + 1;
        Rational::new(num, den).expect("den > 0")
    }
}

fn random_dist(rng: &mut Rng) -> Dist {
    let size = rng.below(4) + 1;
    let mut weights = Vec::new();
    let mut total = 0i64;
    for _ in 0..size {
        let w = rng.below(9) as i64 + 1;
        total += w;
        weights.push((w, rng.below(POINTS)));
    }
    Dist::from_weighted(
        OutcomeSpace::Nat,
        weights
            .into_iter()
            .map(|(w, point)| (Rational::new(w, total).expect("total > 0"), Outcome::Nat(point)))
            .collect(),
    )
    .expect("weights normalized")
}

fn random_rv(rng: &mut Rng) -> RandomVariable {
    let table: Vec<Rational> = (0..POINTS).map(|_| rng.rational()).collect();
    RandomVariable::new(OutcomeSpace::Nat, AlgebraShape::Scalar, move |w| match w {
        Outcome::Nat(n) => MValue::Scalar(table[*n as usize % table.len()].clone()),
        _ => unreachable!(),
    })
}

fn random_map(rng: &mut Rng) -> OutcomeMap {
    let images: Vec<u64> = (0..POINTS).map(|_| rng.below(POINTS)).collect();
    OutcomeMap::new(OutcomeSpace::Nat, OutcomeSpace::Nat, move |w| match w {
        Outcome::Nat(n) => images.get(*n as usize).map(|m| Outcome::Nat(*m)),
        _ => None,
    })
}

pub fn run(seed: u64) -> Result<String, String> {
    let mut rng = Rng(seed | 1);
    let mut tower_cases = 0u32;
    for case in 0..CASES {
        let d = random_dist(&mut rng);
        let x = random_rv(&mut rng);
        let y = random_rv(&mut rng);

        // linearity
        let sum = x.add(&y).map_err(|e| e.to_string())?;
        let lhs = d.expect(&sum).map_err(|e| e.to_string())?;
        let rhs = d
            .expect(&x)
            .and_then(|ex| ex.add(&d.expect(&y)?))
            .map_err(|e| e.to_string())?;
        if lhs != rhs {
            return Err(format!("linearity violated in case {case}"));
        }

        // expectation commutes with pushforward
        let f = random_map(&mut rng);
        let image = pushforward(&f, &d).map_err(|e| e.to_string())?;
        let composed = compose_rv(&x, &f).map_err(|e| e.to_string())?;
        if image.expect(&x).map_err(|e| e.to_string())? != d.expect(&composed).map_err(|e| e.to_string())? {
            return Err(format!("pushforward law violated in case {case}"));
        }

        // tower property whenever the random event is satisfiable
        let cut = rng.below(POINTS);
        let event = Indicator::from_predicate(OutcomeSpace::Nat, move |w| match w {
            Outcome::Nat(n) => *n <= cut,
            _ => false,
        });
        if satisfiable(&d, &event).map_err(|e| e.to_string())? {
            let c = cond_on_indicator(&d, &y, &event).map_err(|e| e.to_string())?;
            if !tower_check(&d, &c, &y).map_err(|e| e.to_string())? {
                return Err(format!("tower property violated in case {case}"));
            }
            tower_cases += 1;
        }
    }
    Ok(format!(
        "self-check ok: {CASES} cases of linearity and pushforward laws, {tower_cases} tower cases (seed {seed})"
    ))
}
