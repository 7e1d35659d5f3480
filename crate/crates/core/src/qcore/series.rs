//! Truncated bivariate power series with windowed q-Laurent coefficients.
//!
//! A `Series2` stores exact coefficients of `z1^m1 z2^m2 q^e` for all keys
//! with non-negative oriented z-exponents, total oriented z-degree at most
//! `zmax`, and `e` inside the declared q-window. Identities are certified
//! exactly on such a window and nowhere else.

use super::monomial::{Orientation, ZqMonomial};
use crate::rat::Rat;
use crate::QError;
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// Dense q-Laurent coefficient on a window. The window is the validity
/// region; the dense storage is trimmed so no leading/trailing zeros are
/// kept and iteration yields only non-zero entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QWindowSeries {
    pub qlo: i32,
    pub qhi: i32,
    lo: i32,
    coeffs: Vec<Rat>,
}

impl QWindowSeries {
    pub fn zero(qlo: i32, qhi: i32) -> Self {
        QWindowSeries { qlo, qhi, lo: 0, coeffs: Vec::new() }
    }

    pub fn window(&self) -> (i32, i32) {
        (self.qlo, self.qhi)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn coeff(&self, e: i32) -> Rat {
        if e < self.lo {
            return Rat::zero();
        }
        let idx = (e - self.lo) as usize;
        self.coeffs.get(idx).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_coeff(&mut self, e: i32, c: Rat) {
        if c.is_zero() || e < self.qlo || e > self.qhi {
            return;
        }
        if self.coeffs.is_empty() {
            self.lo = e;
            self.coeffs.push(c);
            return;
        }
        if e < self.lo {
            let pad = (self.lo - e) as usize;
            let mut v = vec![Rat::zero(); pad];
            v.append(&mut self.coeffs);
            self.coeffs = v;
            self.lo = e;
        }
        let idx = (e - self.lo) as usize;
        if idx >= self.coeffs.len() {
            self.coeffs.resize(idx + 1, Rat::zero());
        }
        self.coeffs[idx] += &c;
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.lo += lead as i32;
        }
    }

    /// Iterates non-zero `(exponent, coefficient)` pairs in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = (i32, &Rat)> {
        let lo = self.lo;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (lo + i as i32, c))
    }

    fn restricted(&self, qlo: i32, qhi: i32) -> QWindowSeries {
        let mut out = QWindowSeries::zero(qlo, qhi);
        for (e, c) in self.iter() {
            if e >= qlo && e <= qhi {
                out.add_coeff(e, c.clone());
            }
        }
        out.trim();
        out
    }
}

/// Truncated series in `z1, z2` with `QWindowSeries` coefficients.
///
/// Invariant: `qlo` is both the window start and a proven lower bound on
/// the q-support of the underlying exact series. This is what makes the
/// window propagation of `series_mul` sound. Constructors that cannot
/// prove the bound must widen the window downwards instead of clipping.
#[derive(Clone, Debug)]
pub struct Series2 {
    pub orientation: Orientation,
    pub zmax: i32,
    pub qlo: i32,
    pub qhi: i32,
    cells: BTreeMap<(i32, i32), QWindowSeries>,
}

impl Series2 {
    pub fn zero(orientation: Orientation, zmax: i32, qwindow: (i32, i32)) -> Self {
        Series2 { orientation, zmax, qlo: qwindow.0, qhi: qwindow.1, cells: BTreeMap::new() }
    }

    pub fn one(orientation: Orientation, zmax: i32, qwindow: (i32, i32)) -> Self {
        assert!(qwindow.0 <= 0 && qwindow.1 >= 0, "window must contain q^0");
        let mut s = Self::zero(orientation, zmax, qwindow);
        s.add_coeff(0, 0, 0, Rat::one());
        s
    }

    pub fn qwindow(&self) -> (i32, i32) {
        (self.qlo, self.qhi)
    }

    fn key_in_region(&self, m1: i32, m2: i32) -> bool {
        let (o1, o2) = self.orientation.oriented(&ZqMonomial::new(m1, m2, 0));
        o1 >= 0 && o2 >= 0 && o1 + o2 <= self.zmax
    }

    pub fn add_coeff(&mut self, m1: i32, m2: i32, e: i32, c: Rat) {
        if c.is_zero() || !self.key_in_region(m1, m2) || e < self.qlo || e > self.qhi {
            return;
        }
        let (qlo, qhi) = (self.qlo, self.qhi);
        self.cells
            .entry((m1, m2))
            .or_insert_with(|| QWindowSeries::zero(qlo, qhi))
            .add_coeff(e, c);
    }

    pub fn coeff(&self, m1: i32, m2: i32, e: i32) -> Rat {
        self.cells.get(&(m1, m2)).map(|q| q.coeff(e)).unwrap_or_else(Rat::zero)
    }

    pub fn cells(&self) -> impl Iterator<Item = (&(i32, i32), &QWindowSeries)> {
        self.cells.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.cells.values().all(|q| q.is_zero())
    }

    fn cleaned(mut self) -> Self {
        for q in self.cells.values_mut() {
            q.trim();
        }
        self.cells.retain(|_, q| !q.is_zero());
        self
    }

    /// Restricts `zmax` and the upper window edge. The lower edge cannot be
    /// raised: it doubles as the support floor (see the type docs).
    pub fn restrict(&self, zmax: i32, qhi: i32) -> Series2 {
        assert!(zmax <= self.zmax && qhi <= self.qhi);
        let mut out = Series2::zero(self.orientation, zmax, (self.qlo, qhi));
        for (k, q) in &self.cells {
            if out.key_in_region(k.0, k.1) {
                let r = q.restricted(self.qlo, qhi);
                if !r.is_zero() {
                    out.cells.insert(*k, r);
                }
            }
        }
        out
    }

    /// Serialization view clipped to the requested window. The result's
    /// window no longer certifies a support floor, so it must not be fed
    /// back into series arithmetic.
    pub fn clip_view(&self, qwindow: (i32, i32)) -> Series2 {
        let qlo = qwindow.0.max(self.qlo);
        let qhi = qwindow.1.min(self.qhi);
        let mut out = Series2::zero(self.orientation, self.zmax, (qlo, qhi));
        for (k, q) in &self.cells {
            let r = q.restricted(qlo, qhi);
            if !r.is_zero() {
                out.cells.insert(*k, r);
            }
        }
        out
    }

    pub fn scale_rat(&self, c: &Rat) -> Series2 {
        let mut out = Series2::zero(self.orientation, self.zmax, (self.qlo, self.qhi));
        if c.is_zero() {
            return out;
        }
        for (k, q) in &self.cells {
            let mut cell = QWindowSeries::zero(self.qlo, self.qhi);
            for (e, v) in q.iter() {
                cell.add_coeff(e, v * c);
            }
            out.cells.insert(*k, cell);
        }
        out.cleaned()
    }

    /// Multiplies by `c * z1^a z2^b q^e`. Keys leaving the oriented orthant
    /// are dropped; the q-window and zmax shift accordingly.
    pub fn scale_monomial(&self, mono: ZqMonomial, c: &Rat) -> Series2 {
        let (o1, o2) = self.orientation.oriented(&mono);
        let mut out = Series2::zero(
            self.orientation,
            self.zmax + o1 + o2,
            (self.qlo + mono.e, self.qhi + mono.e),
        );
        if c.is_zero() {
            return out;
        }
        for (k, q) in &self.cells {
            let nk = (k.0 + mono.m1, k.1 + mono.m2);
            if !out.key_in_region(nk.0, nk.1) {
                continue;
            }
            let mut cell = QWindowSeries::zero(out.qlo, out.qhi);
            for (e, v) in q.iter() {
                cell.add_coeff(e + mono.e, v * c);
            }
            out.cells.insert(nk, cell);
        }
        out.cleaned()
    }

    /// Applies `q`-shifts linear in the z-exponents: the key `(m1, m2, e)`
    /// moves to `(m1, m2, e + c1*m1 + c2*m2)`. This implements argument
    /// substitutions like `z2 -> q z2` at series level. The result window
    /// is `[qlo + s_min, qhi + s_min]` where `s_min` is the least shift
    /// over the z-region: keys needing source data above `qhi` are excluded
    /// and keys shifted up from below `qlo` are known zero by the support
    /// floor.
    pub fn shift_q_linear(&self, c1: i32, c2: i32) -> Series2 {
        let mut s_min = 0i32;
        let d1 = self.orientation.dir1 as i32;
        let d2 = self.orientation.dir2 as i32;
        for o1 in 0..=self.zmax {
            for o2 in 0..=(self.zmax - o1) {
                let s = c1 * o1 * d1 + c2 * o2 * d2;
                s_min = s_min.min(s);
            }
        }
        let mut out = Series2::zero(self.orientation, self.zmax, (self.qlo + s_min, self.qhi + s_min));
        for (k, q) in &self.cells {
            let s = c1 * k.0 + c2 * k.1;
            for (e, v) in q.iter() {
                out.add_coeff(k.0, k.1, e + s, v.clone());
            }
        }
        out
    }

    /// Lexicographically first key (by oriented z-degree, then key, then q)
    /// where the two series differ on their common region.
    pub fn first_difference(&self, other: &Series2) -> Result<Option<(i32, i32, i32, Rat, Rat)>, QError> {
        if self.orientation != other.orientation {
            return Err(QError::OrientationMismatch);
        }
        let zmax = self.zmax.min(other.zmax);
        let qlo = self.qlo.max(other.qlo);
        let qhi = self.qhi.min(other.qhi);
        let mut keys: Vec<(i32, i32)> = self
            .cells
            .keys()
            .chain(other.cells.keys())
            .copied()
            .filter(|k| {
                let o1 = k.0 * self.orientation.dir1 as i32;
                let o2 = k.1 * self.orientation.dir2 as i32;
                o1 >= 0 && o2 >= 0 && o1 + o2 <= zmax
            })
            .collect();
        keys.sort_by_key(|k| {
            (k.0 * self.orientation.dir1 as i32 + k.1 * self.orientation.dir2 as i32, *k)
        });
        keys.dedup();
        for k in keys {
            for e in qlo..=qhi {
                let a = self.coeff(k.0, k.1, e);
                let b = other.coeff(k.0, k.1, e);
                if a != b {
                    return Ok(Some((k.0, k.1, e, a, b)));
                }
            }
        }
        Ok(None)
    }

    pub fn series_eq(&self, other: &Series2) -> Result<bool, QError> {
        Ok(self.first_difference(other)?.is_none())
    }

    /// Renders the series in the library's JSON interchange schema, terms
    /// sorted by `(m1, m2, q)`. Rationals are decimal-digit strings.
    pub fn to_json(&self) -> String {
        let mut s = String::new();
        write!(
            s,
            "{{\"orientation\":[{},{}],\"zmax\":{},\"qwindow\":[{},{}],\"terms\":[",
            self.orientation.dir1, self.orientation.dir2, self.zmax, self.qlo, self.qhi
        )
        .unwrap();
        let mut first = true;
        for (k, q) in &self.cells {
            for (e, c) in q.iter() {
                if !first {
                    s.push(',');
                }
                first = false;
                write!(
                    s,
                    "{{\"m1\":{},\"m2\":{},\"q\":{},\"c\":\"{}\"}}",
                    k.0,
                    k.1,
                    e,
                    c.to_fraction_string()
                )
                .unwrap();
            }
        }
        s.push_str("]}");
        s
    }
}

pub fn series_add(a: &Series2, b: &Series2) -> Result<Series2, QError> {
    if a.orientation != b.orientation {
        return Err(QError::OrientationMismatch);
    }
    // Below the higher of the two floors the other operand is known zero,
    // so the sum window starts at the lower floor.
    let mut out = Series2::zero(
        a.orientation,
        a.zmax.min(b.zmax),
        (a.qlo.min(b.qlo), a.qhi.min(b.qhi)),
    );
    for src in [a, b] {
        for (k, q) in &src.cells {
            for (e, c) in q.iter() {
                out.add_coeff(k.0, k.1, e, c.clone());
            }
        }
    }
    Ok(out.cleaned())
}

pub fn series_sub(a: &Series2, b: &Series2) -> Result<Series2, QError> {
    series_add(a, &b.scale_rat(&-Rat::one()))
}

/// Product with sound window propagation: with both operands supported on
/// the oriented orthant, the result is exact for total degree up to
/// `min(zmax)` and q-window `[qlo_a + qlo_b, min(qhi_a + qlo_b, qhi_b + qlo_a)]`.
pub fn series_mul(a: &Series2, b: &Series2) -> Result<Series2, QError> {
    if a.orientation != b.orientation {
        return Err(QError::OrientationMismatch);
    }
    let zmax = a.zmax.min(b.zmax);
    let qlo = a.qlo + b.qlo;
    let qhi = (a.qhi + b.qlo).min(b.qhi + a.qlo);
    let mut out = Series2::zero(a.orientation, zmax, (qlo, qhi));
    let d1 = a.orientation.dir1 as i32;
    let d2 = a.orientation.dir2 as i32;
    for (ka, qa) in &a.cells {
        let da = ka.0 * d1 + ka.1 * d2;
        if da > zmax {
            continue;
        }
        for (kb, qb) in &b.cells {
            let db = kb.0 * d1 + kb.1 * d2;
            if da + db > zmax {
                continue;
            }
            let key = (ka.0 + kb.0, ka.1 + kb.1);
            let (olo, ohi) = (out.qlo, out.qhi);
            let cell = out.cells.entry(key).or_insert_with(|| QWindowSeries::zero(olo, ohi));
            for (ea, ca) in qa.iter() {
                for (eb, cb) in qb.iter() {
                    let e = ea + eb;
                    if e >= olo && e <= ohi {
                        cell.add_coeff(e, ca * cb);
                    }
                }
            }
        }
    }
    Ok(out.cleaned())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qwindow_series_trims_and_iterates() {
        let mut q = QWindowSeries::zero(0, 10);
        q.add_coeff(3, Rat::one());
        q.add_coeff(5, Rat::from_int(2));
        q.add_coeff(3, -Rat::one());
        q.trim();
        let v: Vec<_> = q.iter().map(|(e, c)| (e, c.clone())).collect();
        assert_eq!(v, vec![(5, Rat::from_int(2))]);
    }

    #[test]
    fn add_and_mul_respect_windows() {
        let o = Orientation::PP;
        let mut a = Series2::zero(o, 4, (0, 6));
        a.add_coeff(1, 0, 2, Rat::one());
        let mut b = Series2::zero(o, 4, (0, 6));
        b.add_coeff(0, 1, 5, Rat::one());
        let p = series_mul(&a, &b).unwrap();
        // q-exponent 7 falls outside the product window [0, 6].
        assert_eq!(p.qwindow(), (0, 6));
        assert!(p.coeff(1, 1, 7).is_zero());

        let mut c = Series2::zero(o, 4, (0, 6));
        c.add_coeff(0, 0, 0, Rat::one());
        let p = series_mul(&a, &c).unwrap();
        assert_eq!(p.coeff(1, 0, 2), Rat::one());
    }

    #[test]
    fn orientation_mismatch_is_an_error() {
        let a = Series2::zero(Orientation::PP, 2, (0, 2));
        let b = Series2::zero(Orientation::MM, 2, (0, 2));
        assert!(series_add(&a, &b).is_err());
        assert!(a.series_eq(&b).is_err());
    }

    #[test]
    fn json_is_sorted_and_stable() {
        let mut a = Series2::zero(Orientation::PP, 3, (0, 4));
        a.add_coeff(1, 0, 2, Rat::one());
        a.add_coeff(0, 1, 1, Rat::new(-1, 2));
        let j = a.to_json();
        assert_eq!(
            j,
            "{\"orientation\":[1,1],\"zmax\":3,\"qwindow\":[0,4],\"terms\":[{\"m1\":0,\"m2\":1,\"q\":1,\"c\":\"-1/2\"},{\"m1\":1,\"m2\":0,\"q\":2,\"c\":\"1/1\"}]}"
        );
    }
}
