//! Parameter 5-tuples for the two module families and the regions on
//! which each identity is asserted.

use crate::QError;

/// `(k1, k2, l1, l2, l3)` with `k1 <= k2` where callers require it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModuleParams {
    pub k1: i32,
    pub k2: i32,
    pub l1: i32,
    pub l2: i32,
    pub l3: i32,
}

impl ModuleParams {
    pub fn new(k1: i32, k2: i32, l1: i32, l2: i32, l3: i32) -> Self {
        ModuleParams { k1, k2, l1, l2, l3 }
    }

    pub fn require_levels(&self) -> Result<(), QError> {
        if self.k1 < 0 || self.k2 < self.k1 {
            return Err(QError::Param(format!(
                "need 0 <= k1 <= k2, got k1={} k2={}",
                self.k1, self.k2
            )));
        }
        Ok(())
    }

    /// `0 <= l1 <= k1, 0 <= l2 <= k2, 0 <= l3 <= min(l1, l2)`
    pub fn in_p_u(&self) -> bool {
        (0..=self.k1).contains(&self.l1)
            && (0..=self.k2).contains(&self.l2)
            && (0..=self.l1.min(self.l2)).contains(&self.l3)
    }

    /// `0 <= l1 <= k1, 0 <= l2 <= k2, l1 <= l3 <= min(l1 + l2, k1)`
    pub fn in_p_v(&self) -> bool {
        (0..=self.k1).contains(&self.l1)
            && (0..=self.k2).contains(&self.l2)
            && (self.l1..=(self.l1 + self.l2).min(self.k1)).contains(&self.l3)
    }

    fn excess(&self) -> i32 {
        self.l1 + self.l2 - self.l3
    }

    /// `P_U` with `k1 <= l1 + l2 - l3 <= k2`
    pub fn in_r_u(&self) -> bool {
        self.in_p_u() && (self.k1..=self.k2).contains(&self.excess())
    }

    /// `P_V` with `0 <= l1 + l2 - l3 <= k2 - k1`
    pub fn in_r_v(&self) -> bool {
        self.in_p_v() && (0..=(self.k2 - self.k1)).contains(&self.excess())
    }

    /// `P_U` with `0 <= l1 + l2 - l3 <= k2`
    pub fn in_rbar_u(&self) -> bool {
        self.in_p_u() && (0..=self.k2).contains(&self.excess())
    }

    /// `P_U` with `k1 - 1 <= l1 + l2 - l3 <= k2`
    pub fn in_rtilde_u(&self) -> bool {
        self.in_p_u() && ((self.k1 - 1)..=self.k2).contains(&self.excess())
    }
}

/// Sweeps all `(l1, l2, l3)` in a box and checks the chain of inclusions
/// `R_U ⊆ R~_U ⊆ Rbar_U ⊆ P_U` and `R_V ⊆ P_V`.
pub fn verify_region_inclusions(k1: i32, k2: i32) -> bool {
    for l1 in -1..=k1 + 1 {
        for l2 in -1..=k2 + 1 {
            for l3 in -1..=k1 + k2 + 1 {
                let p = ModuleParams::new(k1, k2, l1, l2, l3);
                if p.in_r_u() && !p.in_rtilde_u() {
                    return false;
                }
                if p.in_rtilde_u() && !p.in_rbar_u() {
                    return false;
                }
                if p.in_rbar_u() && !p.in_p_u() {
                    return false;
                }
                if p.in_r_v() && !p.in_p_v() {
                    return false;
                }
            }
        }
    }
    true
}

/// All tuples of a region inside the standard parameter box.
pub fn tuples_in_region(k1: i32, k2: i32, pred: impl Fn(&ModuleParams) -> bool) -> Vec<ModuleParams> {
    let mut out = Vec::new();
    for l1 in 0..=k1 {
        for l2 in 0..=k2 {
            for l3 in 0..=(l1 + l2).min(k1) {
                let p = ModuleParams::new(k1, k2, l1, l2, l3);
                if pred(&p) {
                    out.push(p);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inclusions_hold_for_small_levels() {
        for k1 in 0..=4 {
            for k2 in k1..=4 {
                assert!(verify_region_inclusions(k1, k2), "k1={k1} k2={k2}");
            }
        }
    }

    #[test]
    fn sample_memberships() {
        // the worked CLI example: (1,2,0,1,1) lies in P_V, but l3=2 does not
        assert!(ModuleParams::new(1, 2, 0, 1, 1).in_p_v());
        assert!(!ModuleParams::new(1, 2, 0, 1, 2).in_p_v());
        // k1=k2=k: R_V forces l3 = l1+l2, R_U forces l3 = l1+l2-k
        let p = ModuleParams::new(2, 2, 1, 1, 2);
        assert!(p.in_r_v());
        assert!(!ModuleParams::new(2, 2, 1, 1, 1).in_r_v());
        assert!(ModuleParams::new(2, 2, 1, 1, 0).in_r_u());
    }
}
