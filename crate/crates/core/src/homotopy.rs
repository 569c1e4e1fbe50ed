//! Radial contraction of cubes toward their centers and the grid search
//! for the first contraction parameter at which a configuration becomes
//! decomposable.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::factorization::{factor, FactorResult};
use crate::geometry::{Configuration, Cube, Interval};
use crate::rational::Rational;
use crate::words::{AxisBlocks, TensorWord};

/// Scale every cube about its own center by (1 - t) on each axis, so t = 0
/// is the identity and t -> 1 shrinks to the center points. Disjointness
/// and labels are preserved.
pub fn contract(config: &Configuration, t: &Rational) -> Result<Configuration> {
    if t.is_negative() || *t >= Rational::one() {
        return Err(Error::InvalidContraction(t.to_string()));
    }
    let scale = &Rational::one() - t;
    let half = Rational::new(1, 2);
    let cubes = config
        .cubes()
        .iter()
        .map(|cube| {
            let intervals = cube
                .intervals()
                .iter()
                .map(|iv| {
                    let center = &(iv.lo() + iv.hi()) * &half;
                    let radius = &(&iv.length() * &half) * &scale;
                    Interval::new(&center - &radius, &center + &radius)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Cube::new(intervals))
        })
        .collect::<Result<Vec<_>>>()?;
    Configuration::new(config.dim(), cubes)
}

/// Result of the threshold scan: the smallest grid point i/grid at which
/// the contracted configuration factors, with its canonical word as the
/// certificate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContractionReport {
    #[serde(skip)]
    pub config: Configuration,
    #[serde(skip)]
    pub blocks: AxisBlocks,
    pub threshold: Rational,
    pub grid: u64,
    pub certificate: TensorWord,
}

/// Scan t = 0, 1/grid, ..., (grid-1)/grid in order and return the first
/// decomposable contraction. Decomposability is not known to be monotone
/// in t, so this is a linear scan, not a bisection.
pub fn decomposability_threshold(
    config: &Configuration,
    blocks: &AxisBlocks,
    grid: u64,
) -> Result<ContractionReport> {
    if config.arity() == 0 {
        return Err(Error::EmptyConfiguration);
    }
    for i in 0..grid {
        let t = Rational::from_big(i.into(), grid.into())?;
        let contracted = contract(config, &t)?;
        if let FactorResult::Word(certificate) = factor(&contracted, blocks)? {
            return Ok(ContractionReport {
                config: config.clone(),
                blocks: blocks.clone(),
                threshold: t,
                grid,
                certificate,
            });
        }
    }
    Err(Error::NoThreshold { grid })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorization::{is_decomposable, pinwheel};
    use crate::rational::rat;

    fn blocks11() -> AxisBlocks {
        AxisBlocks::new(vec![1, 1]).unwrap()
    }

    fn iv(lo: (i64, i64), hi: (i64, i64)) -> Interval {
        Interval::new(rat(lo.0, lo.1), rat(hi.0, hi.1)).unwrap()
    }

    #[test]
    fn contract_identity_at_zero() {
        let c = pinwheel();
        assert_eq!(contract(&c, &Rational::zero()).unwrap(), c);
        assert!(contract(&c, &Rational::one()).is_err());
        assert!(contract(&c, &rat(-1, 2)).is_err());
    }

    #[test]
    fn contract_quarter_square() {
        let c = Configuration::new(
            2,
            vec![Cube::new(vec![iv((0, 1), (1, 2)), iv((0, 1), (1, 2))])],
        )
        .unwrap();
        let out = contract(&c, &rat(1, 2)).unwrap();
        assert_eq!(
            out.cube(0),
            &Cube::new(vec![iv((1, 8), (3, 8)), iv((1, 8), (3, 8))])
        );
        assert_eq!(out.min_cube_volume().unwrap(), rat(1, 16));
    }

    #[test]
    fn contract_pinwheel_half() {
        let out = contract(&pinwheel(), &rat(1, 2)).unwrap();
        let expect = |c: &[((i64, i64), (i64, i64)); 2]| {
            Cube::new(vec![iv(c[0].0, c[0].1), iv(c[1].0, c[1].1)])
        };
        assert_eq!(out.cube(0), &expect(&[((1, 6), (1, 2)), ((1, 12), (1, 4))]));
        assert_eq!(out.cube(1), &expect(&[((3, 4), (11, 12)), ((1, 6), (1, 2))]));
        assert_eq!(out.cube(2), &expect(&[((1, 2), (5, 6)), ((3, 4), (11, 12))]));
        assert_eq!(out.cube(3), &expect(&[((1, 12), (1, 4)), ((1, 2), (5, 6))]));
    }

    #[test]
    fn volume_law() {
        let c = pinwheel();
        let t = rat(1, 3);
        let contracted = contract(&c, &t).unwrap();
        let scale = &Rational::one() - &t;
        let factor_d = &scale * &scale; // d = 2
        assert_eq!(
            contracted.min_cube_volume().unwrap(),
            &factor_d * &c.min_cube_volume().unwrap()
        );
    }

    #[test]
    fn threshold_zero_when_already_decomposable() {
        let c = Configuration::new(
            2,
            vec![
                Cube::new(vec![iv((0, 1), (1, 2)), iv((0, 1), (1, 1))]),
                Cube::new(vec![iv((1, 2), (1, 1)), iv((0, 1), (1, 1))]),
            ],
        )
        .unwrap();
        let report = decomposability_threshold(&c, &blocks11(), 4).unwrap();
        assert_eq!(report.threshold, Rational::zero());
        assert_eq!(
            report.certificate.eval(&blocks11()).unwrap(),
            c
        );
    }

    #[test]
    fn pinwheel_threshold_grid_two() {
        let report = decomposability_threshold(&pinwheel(), &blocks11(), 2).unwrap();
        assert_eq!(report.threshold, rat(1, 2));
        let contracted = contract(&pinwheel(), &rat(1, 2)).unwrap();
        assert_eq!(
            report.certificate.eval(&blocks11()).unwrap(),
            contracted
        );
        assert!(is_decomposable(&contracted, &blocks11()).unwrap());
    }

    #[test]
    fn threshold_error_cases() {
        assert!(matches!(
            decomposability_threshold(&Configuration::empty(2), &blocks11(), 4),
            Err(Error::EmptyConfiguration)
        ));
        // grid 1 only tries t = 0, which fails on the pinwheel
        assert!(matches!(
            decomposability_threshold(&pinwheel(), &blocks11(), 1),
            Err(Error::NoThreshold { grid: 1 })
        ));
    }
}
