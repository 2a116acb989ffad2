use std::fmt;

use num_bigint::BigUint;

use crate::model::{Domain, Problem};

/// With `m` objects and predicates of arity at most `k` there are at most
/// `m^k` propositions, so a shortest plan has length below `2^(m^k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsReport {
    pub k: usize,
    pub m: usize,
    pub exponent: BigUint,
}

pub fn report_bounds(d: &Domain, p: &Problem) -> BoundsReport {
    let k = d.max_arity();
    let m = p.objects.len();
    BoundsReport { k, m, exponent: BigUint::from(m).pow(k as u32) }
}

impl fmt::Display for BoundsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "k={} m={} exponent={}", self.k, self.m, self.exponent)?;
        writeln!(f, "shortest-plan length ≤ 2^({})", self.exponent)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoders::param_domain;
    use crate::model::{Bounds, Name};

    fn problem(objects: usize) -> Problem {
        Problem {
            name: Name::lit("p"),
            domain_name: Name::lit("d"),
            objects: (0..objects).map(|i| (Name::lit(&format!("o{i}")), Name::lit("object"))).collect(),
            init: Default::default(),
            goal: Vec::new(),
        }
    }

    #[test]
    fn nullary_only() {
        let mut d = param_domain(Bounds::new(1, 1, 0));
        d.predicates.clear();
        let r = report_bounds(&d, &problem(7));
        assert_eq!((r.k, r.exponent), (0, BigUint::from(1u32)));
    }

    #[test]
    fn six_ary() {
        let r = report_bounds(&param_domain(Bounds::new(3, 2, 1)), &problem(5));
        assert_eq!(r.k, 6);
        assert_eq!(r.exponent, BigUint::from(15625u32));
        assert_eq!(r.to_string(), "k=6 m=5 exponent=15625\nshortest-plan length ≤ 2^(15625)\n");
    }

    #[test]
    fn large_exponent_is_exact() {
        let r = report_bounds(&param_domain(Bounds::new(3, 2, 1)), &problem(1000));
        assert_eq!(r.exponent.to_string(), "1000000000000000000");
    }
}
