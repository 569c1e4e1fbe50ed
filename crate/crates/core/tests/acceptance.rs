//! Acceptance criteria. Each test prints one `criterion N (name): pass|fail`
//! line and fails loudly with the offending seeds otherwise. All numeric
//! checks are exact (rational arithmetic); the only tolerance anywhere is
//! the wall-clock bound in criterion 1.

use std::time::Instant;

use little_cubes::{
    contract, decomposability_threshold, factor, is_decomposable, pinwheel, rat, run_suite,
    AxisBlocks, Configuration, Cube, FactorResult, Interval, Rational, Suite, SuiteReport,
};

fn blocks(sizes: &[usize]) -> AxisBlocks {
    AxisBlocks::new(sizes.to_vec()).unwrap()
}

fn report_line(criterion: usize, name: &str, reports: &[SuiteReport]) {
    let ok = reports.iter().all(SuiteReport::passed);
    println!(
        "criterion {criterion} ({name}): {}",
        if ok { "pass" } else { "fail" }
    );
    for report in reports {
        assert!(
            report.passed(),
            "criterion {criterion} ({name}), suite {}: {:?}",
            report.suite,
            report.failures
        );
    }
}

fn iv(lo: (i64, i64), hi: (i64, i64)) -> Interval {
    Interval::new(rat(lo.0, lo.1), rat(hi.0, hi.1)).unwrap()
}

#[test]
fn criterion_1_roundtrip() {
    // 1000 words of arity <= 8 split over four block shapes, in under 60 s
    let start = Instant::now();
    let reports: Vec<SuiteReport> = [
        blocks(&[1, 1]),
        blocks(&[1, 2]),
        blocks(&[2, 1]),
        blocks(&[2, 2]),
    ]
    .iter()
    .map(|b| run_suite(Suite::Roundtrip, 250, 0xACCE97, b))
    .collect();
    let elapsed = start.elapsed().as_millis();
    assert!(elapsed < 60_000, "roundtrip took {elapsed} ms (bound 60000)");
    report_line(1, "roundtrip", &reports);
}

#[test]
fn criterion_2_oracle() {
    let report = run_suite(Suite::Oracle, 200, 0xACCE97, &blocks(&[1, 1]));
    report_line(2, "oracle", &[report]);
}

#[test]
fn criterion_3_interchange() {
    let report = run_suite(Suite::Interchange, 500, 0xACCE97, &blocks(&[1, 1]));
    report_line(3, "interchange", &[report]);
}

#[test]
fn criterion_4_genpos() {
    let report = run_suite(Suite::GenPos, 300, 0xACCE97, &blocks(&[1, 1]));
    report_line(4, "genpos", &[report]);
}

#[test]
fn criterion_5_bruteforce() {
    // the pinwheel is the canonical non-decomposable witness
    let b = blocks(&[1, 1]);
    match factor(&pinwheel(), &b).unwrap() {
        FactorResult::NotDecomposable(witness) => {
            assert_eq!(witness.single_groups.len(), 2);
            for grouping in &witness.single_groups {
                assert_eq!(grouping.groups, vec![vec![1, 2, 3, 4]]);
            }
        }
        FactorResult::Word(_) => panic!("pinwheel must not factor"),
    }
    assert!(!is_decomposable(&pinwheel(), &b).unwrap());
    assert!(!little_cubes::brute_force_decomposable(&pinwheel(), &b, 6).unwrap());

    let report = run_suite(Suite::BruteForce, 100, 0xACCE97, &b);
    report_line(5, "bruteforce", &[report]);
}

#[test]
fn criterion_6_contraction() {
    // frozen: contracting the pinwheel halfway gives these exact boxes
    let half = rat(1, 2);
    let contracted = contract(&pinwheel(), &half).unwrap();
    let cube = |a: [((i64, i64), (i64, i64)); 2]| {
        Cube::new(vec![iv(a[0].0, a[0].1), iv(a[1].0, a[1].1)])
    };
    let expected = Configuration::new(
        2,
        vec![
            cube([((1, 6), (1, 2)), ((1, 12), (1, 4))]),
            cube([((3, 4), (11, 12)), ((1, 6), (1, 2))]),
            cube([((1, 2), (5, 6)), ((3, 4), (11, 12))]),
            cube([((1, 12), (1, 4)), ((1, 2), (5, 6))]),
        ],
    )
    .unwrap();
    assert_eq!(contracted, expected);

    // frozen: on the 64-point grid the pinwheel first factors at t = 1/2
    let b2 = blocks(&[1, 1]);
    let report = decomposability_threshold(&pinwheel(), &b2, 64).unwrap();
    assert_eq!(report.threshold, Rational::new(1, 2));
    assert_eq!(report.certificate.eval(&b2).unwrap(), contracted);

    // random configurations in dimensions 2 and 3, grids up to 256
    let reports = [
        run_suite(Suite::Contraction, 50, 0xACCE97, &b2),
        run_suite(Suite::Contraction, 50, 0xACCE97, &blocks(&[1, 2])),
    ];
    report_line(6, "contraction", &reports);
}

#[test]
fn criterion_7_multifactor() {
    let report = run_suite(Suite::Multifactor, 200, 0xACCE97, &blocks(&[1, 1, 1]));
    report_line(7, "multifactor", &[report]);
}

#[test]
fn criterion_8_equivariance() {
    let report = run_suite(Suite::Equivariance, 200, 0xACCE97, &blocks(&[1, 1]));
    report_line(8, "equivariance", &[report]);
}

#[test]
fn criterion_9_algebra() {
    let report = run_suite(Suite::Algebra, 500, 0xACCE97, &blocks(&[1, 1]));
    report_line(9, "algebra", &[report]);
}
