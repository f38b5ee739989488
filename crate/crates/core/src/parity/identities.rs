//! The combinatorial identities behind the matrix argument, run as a
//! single suite with pass/fail counts.

use serde::{Deserialize, Serialize};

use super::coeff::{
    d_coeff, difference_recurrence_holds, hockey_stick, pathcount_closed_form, pathcount_power,
    telescoping_holds, v_support,
};
use super::poly::certify_all;
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityLimits {
    /// Hockey stick over `m, k ≤ hockey_max`.
    pub hockey_max: i64,
    /// Recurrence, antisymmetry, telescoping and support over `h ≤ h_max`.
    pub h_max: i64,
    /// Polynomial certificates over `h ≤ poly_h_max`.
    pub poly_h_max: i64,
    /// Path-count powers over `h ≤ pathcount_h_max`.
    pub pathcount_h_max: usize,
}

impl Default for IdentityLimits {
    fn default() -> Self {
        IdentityLimits {
            hockey_max: 30,
            h_max: 12,
            poly_h_max: 10,
            pathcount_h_max: 8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub checked: usize,
    pub failed: usize,
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        self.failed == 0 && self.checked > 0
    }
}

struct Tally {
    name: &'static str,
    checked: usize,
    failed: usize,
}

impl Tally {
    fn new(name: &'static str) -> Tally {
        Tally {
            name,
            checked: 0,
            failed: 0,
        }
    }

    fn record(&mut self, ok: bool) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
        }
    }

    fn finish(self) -> IdentityCheck {
        IdentityCheck {
            name: self.name.into(),
            checked: self.checked,
            failed: self.failed,
        }
    }
}

pub fn run_identity_suite(limits: &IdentityLimits) -> Result<Vec<IdentityCheck>> {
    let mut hockey = Tally::new("hockey_stick");
    for m in 0..=limits.hockey_max {
        for k in 0..=limits.hockey_max {
            hockey.record(hockey_stick(m, k));
        }
    }

    let mut recurrence = Tally::new("difference_recurrence");
    let mut antisym = Tally::new("d_antisymmetry");
    let mut d2 = Tally::new("d2_equals_i");
    let mut telescoping = Tally::new("telescoping_sum");
    let mut support = Tally::new("v_support");
    for h in 1..=limits.h_max {
        for j in 2..=2 * h + 1 {
            for i in -h..h {
                recurrence.record(difference_recurrence_holds(j, i, h)?);
            }
        }
        for j in 0..=2 * h + 1 {
            for i in -h..=h {
                antisym.record(d_coeff(j, -i, h)? == -d_coeff(j, i, h)?);
            }
        }
        for i in 1..=h {
            d2.record(d_coeff(2, i, h)? == i.into());
        }
        for n in 1..=2 * h + 1 {
            for j in -h..=h - n {
                telescoping.record(telescoping_holds(h, n, j)?);
            }
            let s = v_support(h, n)?;
            support.record(s.upper_vanishes && s.interior_positive);
        }
    }

    let mut polys = Tally::new("p_poly_odd_degree_interpolation");
    for h in 1..=limits.poly_h_max {
        for c in certify_all(h)? {
            polys.record(c.holds());
        }
    }

    let mut paths = Tally::new("pathcount_closed_form");
    for h in 1..=limits.pathcount_h_max {
        for n in 1..=2 * h + 1 {
            paths.record(pathcount_power(h, n)? == pathcount_closed_form(h, n));
        }
    }

    Ok([
        hockey,
        recurrence,
        antisym,
        d2,
        telescoping,
        support,
        polys,
        paths,
    ]
    .into_iter()
    .map(Tally::finish)
    .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes() {
        let limits = IdentityLimits {
            hockey_max: 10,
            h_max: 5,
            poly_h_max: 4,
            pathcount_h_max: 3,
        };
        let checks = run_identity_suite(&limits).unwrap();
        assert_eq!(checks.len(), 8);
        for c in checks {
            assert!(c.passed(), "{c:?}");
        }
    }
}
