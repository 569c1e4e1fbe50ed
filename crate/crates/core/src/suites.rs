//! Seeded property suites. Each suite runs `trials` independent trials,
//! deriving a per-trial seed from the suite seed and the trial index, and
//! reports every failing trial with its seed and an input digest so that
//! any failure reproduces exactly.

use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Error;
use crate::factorization::{
    brute_force_decomposable, factor, is_decomposable, pinwheel, FactorResult,
    BRUTE_FORCE_DEFAULT_BOUND,
};
use crate::gen::{
    derive_seed, gen_config_scattered, gen_operation, gen_word, random_permutation, GenParams,
};
use crate::geometry::{block_permutation, Configuration};
use crate::homotopy::{contract, decomposability_threshold};
use crate::rational::Rational;
use crate::rewrite::{apply_move, word_equal_oracle, MoveKind, OracleVerdict, RewriteMove};
use crate::words::{canonical_order, normalize_gen_pos, AxisBlocks, Generator, TensorWord};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Roundtrip,
    Interchange,
    GenPos,
    Equivariance,
    Oracle,
    Contraction,
    Multifactor,
    BruteForce,
    Algebra,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Roundtrip,
        Suite::Interchange,
        Suite::GenPos,
        Suite::Equivariance,
        Suite::Oracle,
        Suite::Contraction,
        Suite::Multifactor,
        Suite::BruteForce,
        Suite::Algebra,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Roundtrip => "roundtrip",
            Suite::Interchange => "interchange",
            Suite::GenPos => "genpos",
            Suite::Equivariance => "equivariance",
            Suite::Oracle => "oracle",
            Suite::Contraction => "contraction",
            Suite::Multifactor => "multifactor",
            Suite::BruteForce => "bruteforce",
            Suite::Algebra => "algebra",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Suite, Error> {
        Suite::ALL
            .iter()
            .find(|suite| suite.name() == s)
            .copied()
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    pub seed: u64,
    pub digest: String,
    pub message: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub trials: u64,
    pub failures: Vec<Failure>,
    pub elapsed_ms: u128,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// FNV-1a over the serialized input; identifies the failing instance.
fn digest(input: &impl Serialize) -> String {
    let bytes = serde_json::to_vec(input).unwrap_or_default();
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for b in bytes {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    format!("{hash:016x}")
}

struct Trial {
    seed: u64,
    failures: Vec<Failure>,
}

impl Trial {
    fn fail(&mut self, input: &impl Serialize, message: impl Into<String>) {
        self.failures.push(Failure {
            seed: self.seed,
            digest: digest(input),
            message: message.into(),
        });
    }
}

pub fn run_suite(suite: Suite, trials: u64, seed: u64, blocks: &AxisBlocks) -> SuiteReport {
    let start = Instant::now();
    let mut failures = Vec::new();
    for index in 0..trials {
        let trial_seed = derive_seed(seed, index);
        let mut trial = Trial {
            seed: trial_seed,
            failures: Vec::new(),
        };
        match suite {
            Suite::Roundtrip => roundtrip_trial(&mut trial, blocks, 4),
            Suite::Interchange => interchange_trial(&mut trial, blocks),
            Suite::GenPos => genpos_trial(&mut trial, blocks),
            Suite::Equivariance => equivariance_trial(&mut trial, blocks),
            Suite::Oracle => oracle_trial(&mut trial, blocks),
            Suite::Contraction => contraction_trial(&mut trial, blocks),
            Suite::Multifactor => {
                let triple = AxisBlocks::new(vec![1, 1, 1]).expect("static blocks");
                roundtrip_trial(&mut trial, &triple, 4)
            }
            Suite::BruteForce => bruteforce_trial(&mut trial, blocks),
            Suite::Algebra => algebra_trial(&mut trial, blocks),
        }
        failures.extend(trial.failures);
    }
    SuiteReport {
        suite: suite.name().to_string(),
        trials,
        failures,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

/// A random word over `blocks` with arity at most 8 and at most
/// `max_generators` generators, resampling from derived seeds if needed.
fn bounded_word(seed: u64, blocks: &AxisBlocks, max_generators: usize) -> TensorWord {
    for attempt in 0..64 {
        let mut params = GenParams::new(derive_seed(seed, 1000 + attempt), blocks.clone());
        params.max_generators = max_generators;
        if let Ok(word) = gen_word(&params) {
            if word.arity() <= 8 {
                return word;
            }
        }
    }
    TensorWord::leaf(1)
}

fn roundtrip_trial(trial: &mut Trial, blocks: &AxisBlocks, max_generators: usize) {
    let word = bounded_word(trial.seed, blocks, max_generators);
    let config = match word.eval(blocks) {
        Ok(c) => c,
        Err(e) => return trial.fail(&word, format!("eval failed: {e}")),
    };
    match factor(&config, blocks) {
        Ok(FactorResult::Word(back)) => {
            match back.eval(blocks) {
                Ok(again) if again == config => {}
                Ok(_) => trial.fail(&word, "factored word re-evaluates differently"),
                Err(e) => trial.fail(&word, format!("re-eval failed: {e}")),
            }
            if back.arity() >= 2 {
                if let TensorWord::Node { gen, children } = &back {
                    if gen.arity() < 2 || children.iter().any(|c| c.arity() == 0) {
                        trial.fail(&word, "canonical word is not gen-pos normal");
                    }
                }
            }
        }
        Ok(FactorResult::NotDecomposable(_)) => {
            trial.fail(&word, "image of eval reported as not decomposable")
        }
        Err(e) => trial.fail(&word, format!("factor failed: {e}")),
    }
}

fn interchange_trial(trial: &mut Trial, blocks: &AxisBlocks) {
    if blocks.count() < 2 {
        let seed = trial.seed;
        return trial.fail(&seed, "interchange suite needs at least two blocks");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(trial.seed);
    let a = rng.random_range(1..=3usize);
    let b = rng.random_range(1..=3usize);
    let k1 = blocks.size(1).expect("block 1");
    let k2 = blocks.size(2).expect("block 2");
    let p = gen_operation(derive_seed(trial.seed, 1), k1, a, 8);
    let q = gen_operation(derive_seed(trial.seed, 2), k2, b, 8);
    let sigma = random_permutation(&mut rng, a * b);
    let mut labels = (0..a * b).map(|i| sigma.apply(i) + 1);
    let q_gen = Generator::new(2, q);
    let children: Vec<TensorWord> = (0..a)
        .map(|_| {
            TensorWord::node(
                q_gen.clone(),
                (0..b).map(|_| TensorWord::leaf(labels.next().unwrap())).collect(),
            )
        })
        .collect();
    let w1 = TensorWord::node(Generator::new(1, p), children);
    let mv = RewriteMove::new(MoveKind::InterchangeForward, vec![]);
    let w2 = match apply_move(&w1, &mv, blocks) {
        Ok(w) => w,
        Err(e) => return trial.fail(&w1, format!("interchange not applicable: {e}")),
    };
    match (w1.eval(blocks), w2.eval(blocks)) {
        (Ok(e1), Ok(e2)) if e1 == e2 => {}
        (Ok(_), Ok(_)) => return trial.fail(&w1, "interchange changed the evaluation"),
        _ => return trial.fail(&w1, "eval failed on interchange pair"),
    }
    let back = RewriteMove::new(MoveKind::InterchangeBackward, vec![]);
    match apply_move(&w2, &back, blocks) {
        Ok(w) if w == w1 => {}
        _ => trial.fail(&w1, "interchange backward did not restore the word"),
    }
}

fn genpos_trial(trial: &mut Trial, blocks: &AxisBlocks) {
    // resample until the word has arity >= 2
    let mut word = None;
    for attempt in 0..64 {
        let candidate = bounded_word(derive_seed(trial.seed, 2000 + attempt), blocks, 4);
        if candidate.arity() >= 2 {
            word = Some(candidate);
            break;
        }
    }
    let Some(word) = word else {
        let seed = trial.seed;
        return trial.fail(&seed, "could not sample a word of arity >= 2");
    };
    let normal = match normalize_gen_pos(&word) {
        Ok(n) => n,
        Err(e) => return trial.fail(&word, format!("normalize failed: {e}")),
    };
    let TensorWord::Node { gen, children } = &normal else {
        return trial.fail(&word, "normal form is a bare leaf");
    };
    if gen.arity() < 2 {
        trial.fail(&word, "normal form head has arity < 2");
    }
    if children.iter().any(|c| c.arity() == 0) {
        trial.fail(&word, "normal form has a nullary child");
    }
    match (word.eval(blocks), normal.eval(blocks)) {
        (Ok(a), Ok(b)) if a == b => {}
        _ => trial.fail(&word, "normalization changed the evaluation"),
    }
}

fn equivariance_trial(trial: &mut Trial, blocks: &AxisBlocks) {
    let mut rng = ChaCha8Rng::seed_from_u64(trial.seed);
    let arity = rng.random_range(2..=5usize);
    let config = if rng.random_bool(0.5) {
        gen_config_scattered(derive_seed(trial.seed, 1), blocks.dim(), arity)
    } else {
        gen_operation(derive_seed(trial.seed, 1), blocks.dim(), arity, 8)
    };
    let sigma = random_permutation(&mut rng, arity);
    let acted = config.act(&sigma).expect("matching sizes");
    let lhs = factor(&acted, blocks);
    let rhs = factor(&config, blocks);
    match (lhs, rhs) {
        (Ok(FactorResult::Word(wa)), Ok(FactorResult::Word(wc))) => {
            let inv = sigma.inverse();
            let relabeled = wc.relabel(&|label| inv.apply(label - 1) + 1);
            if canonical_order(&relabeled) != canonical_order(&wa) {
                trial.fail(&config, "factor does not commute with the relabeling action");
            }
        }
        (Ok(FactorResult::NotDecomposable(_)), Ok(FactorResult::NotDecomposable(_))) => {}
        (Ok(_), Ok(_)) => trial.fail(&config, "decomposability not invariant under relabeling"),
        _ => trial.fail(&config, "factor failed"),
    }
}

fn oracle_trial(trial: &mut Trial, blocks: &AxisBlocks) {
    let word = bounded_word(trial.seed, blocks, 4);
    let config = match word.eval(blocks) {
        Ok(c) => c,
        Err(e) => return trial.fail(&word, format!("eval failed: {e}")),
    };
    let back = match factor(&config, blocks) {
        Ok(FactorResult::Word(w)) => w,
        _ => return trial.fail(&word, "factor did not return a word"),
    };
    match back.eval(blocks) {
        Ok(again) if again == config => {}
        _ => return trial.fail(&word, "factored word re-evaluates differently"),
    }
    match word_equal_oracle(&word, &back, 12, blocks) {
        OracleVerdict::Equal => {}
        OracleVerdict::NotFound => {
            trial.fail(&word, "oracle inconclusive: no chain of length <= 12 found")
        }
    }
}

fn contraction_trial(trial: &mut Trial, blocks: &AxisBlocks) {
    let mut rng = ChaCha8Rng::seed_from_u64(trial.seed);
    let arity = rng.random_range(1..=4usize);
    let dim = blocks.dim();
    let config = if dim == 2 && rng.random_bool(0.4) {
        // glue the pinwheel into a random cell so t = 0 fails
        let outer = gen_operation(derive_seed(trial.seed, 1), dim, arity, 8);
        let slot = rng.random_range(0..arity);
        let mut inners = vec![Configuration::identity(dim); arity];
        inners[slot] = pinwheel();
        outer.compose(&inners).expect("matching dims")
    } else if rng.random_bool(0.5) {
        gen_config_scattered(derive_seed(trial.seed, 1), dim, arity)
    } else {
        gen_operation(derive_seed(trial.seed, 1), dim, arity, 8)
    };
    let mut grid = 2u64;
    loop {
        match decomposability_threshold(&config, blocks, grid) {
            Ok(report) => {
                if report.threshold >= Rational::one() {
                    trial.fail(&config, "threshold at or above 1");
                }
                let contracted =
                    contract(&config, &report.threshold).expect("threshold below 1");
                match report.certificate.eval(blocks) {
                    Ok(c) if c == contracted => {}
                    _ => trial.fail(&config, "certificate does not evaluate to the contraction"),
                }
                return;
            }
            Err(Error::NoThreshold { .. }) if grid < 256 => grid *= 2,
            Err(e) => return trial.fail(&config, format!("no threshold up to grid 256: {e}")),
        }
    }
}

fn bruteforce_trial(trial: &mut Trial, blocks: &AxisBlocks) {
    let mut rng = ChaCha8Rng::seed_from_u64(trial.seed);
    let arity = rng.random_range(2..=5usize);
    let dim = blocks.dim();
    let config = match rng.random_range(0..3u8) {
        0 => gen_config_scattered(derive_seed(trial.seed, 1), dim, arity),
        1 => gen_operation(derive_seed(trial.seed, 1), dim, arity, 8),
        _ if dim == 2 => {
            // contracted pinwheels: decomposable or not depending on t
            let t = Rational::new(i64::from(rng.random_range(0..8u8)), 8);
            let base = contract(&pinwheel(), &t).expect("t < 1");
            let sigma = random_permutation(&mut rng, 4);
            base.act(&sigma).expect("matching sizes")
        }
        _ => gen_operation(derive_seed(trial.seed, 1), dim, arity, 8),
    };
    let fast = match is_decomposable(&config, blocks) {
        Ok(v) => v,
        Err(e) => return trial.fail(&config, format!("factor failed: {e}")),
    };
    let slow = match brute_force_decomposable(&config, blocks, BRUTE_FORCE_DEFAULT_BOUND) {
        Ok(v) => v,
        Err(e) => return trial.fail(&config, format!("brute force failed: {e}")),
    };
    if fast != slow {
        trial.fail(
            &config,
            format!("disagreement: factor says {fast}, brute force says {slow}"),
        );
    }
}

fn algebra_trial(trial: &mut Trial, blocks: &AxisBlocks) {
    let mut rng = ChaCha8Rng::seed_from_u64(trial.seed);
    let dim = blocks.dim();
    let a = rng.random_range(0..=3usize);
    let outer = gen_operation(derive_seed(trial.seed, 1), dim, a, 8);
    let mids: Vec<Configuration> = (0..a)
        .map(|i| {
            let arity = rng.random_range(0..=2usize);
            gen_operation(derive_seed(trial.seed, 10 + i as u64), dim, arity, 8)
        })
        .collect();
    let total: usize = mids.iter().map(Configuration::arity).sum();
    let inners: Vec<Configuration> = (0..total)
        .map(|i| {
            let arity = rng.random_range(0..=2usize);
            gen_operation(derive_seed(trial.seed, 100 + i as u64), dim, arity, 8)
        })
        .collect();

    // unit laws
    if Configuration::identity(dim).compose(std::slice::from_ref(&outer)).ok().as_ref() != Some(&outer) {
        trial.fail(&outer, "left unit law violated");
    }
    let ids = vec![Configuration::identity(dim); a];
    if outer.compose(&ids).ok().as_ref() != Some(&outer) {
        trial.fail(&outer, "right unit law violated");
    }

    // associativity
    let composed_mid = outer.compose(&mids).expect("matching arities");
    let lhs = composed_mid.compose(&inners).expect("matching arities");
    let mut offset = 0;
    let nested: Vec<Configuration> = mids
        .iter()
        .map(|mid| {
            let slice = &inners[offset..offset + mid.arity()];
            offset += mid.arity();
            mid.compose(slice).expect("matching arities")
        })
        .collect();
    let rhs = outer.compose(&nested).expect("matching arities");
    if lhs != rhs {
        trial.fail(&outer, "associativity violated");
    }

    // equivariance
    let sigma = random_permutation(&mut rng, a);
    let permuted_mids: Vec<Configuration> =
        (0..a).map(|i| mids[sigma.apply(i)].clone()).collect();
    let lhs = outer
        .act(&sigma)
        .expect("matching sizes")
        .compose(&permuted_mids)
        .expect("matching arities");
    let arities: Vec<usize> = mids.iter().map(Configuration::arity).collect();
    let tau = block_permutation(&sigma, &arities);
    let rhs = composed_mid.act(&tau).expect("matching sizes");
    if lhs != rhs {
        trial.fail(&outer, "equivariance violated");
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn blocks11() -> AxisBlocks {
        AxisBlocks::new(vec![1, 1]).unwrap()
    }

    #[test]
    fn suite_names_roundtrip() {
        for suite in Suite::ALL {
            assert_eq!(suite.name().parse::<Suite>().unwrap(), suite);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn quick_suite_smoke() {
        for suite in [
            Suite::Roundtrip,
            Suite::Interchange,
            Suite::GenPos,
            Suite::Equivariance,
            Suite::BruteForce,
            Suite::Algebra,
        ] {
            let report = run_suite(suite, 20, 7, &blocks11());
            assert!(
                report.passed(),
                "suite {} failed: {:?}",
                report.suite,
                report.failures
            );
        }
    }

    #[test]
    fn contraction_and_oracle_smoke() {
        for suite in [Suite::Contraction, Suite::Oracle, Suite::Multifactor] {
            let report = run_suite(suite, 10, 11, &blocks11());
            assert!(
                report.passed(),
                "suite {} failed: {:?}",
                report.suite,
                report.failures
            );
        }
    }

    #[test]
    fn reports_serialize() {
        let report = run_suite(Suite::Algebra, 3, 1, &blocks11());
        let json = serde_json::to_string(&report).unwrap();
        assert!(json.contains("\"suite\":\"algebra\""));
        assert!(json.contains("\"failures\":[]"));
    }
}

