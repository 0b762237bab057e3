use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::exact::{Cyclotomic, Polynomial, Rational};
use crate::qtheta::{Sign, ThetaTerm};

/// `coeff · δ_point^{(order)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Delta {
    pub point: Rational,
    pub order: u32,
    pub coeff: Cyclotomic,
}

/// A piecewise polynomial on ℝ plus finitely many derivatives of Dirac
/// masses.
///
/// `pieces[j]` governs the open interval `(breakpoints[j-1], breakpoints[j])`,
/// with the two unbounded ends at `pieces[0]` and `pieces[len-1]`. The
/// canonical form has no breakpoint whose neighbouring pieces coincide and
/// keeps deltas sorted by `(point, order)` with nonzero coefficients, so
/// structural equality is equality of distributions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplineDistribution {
    breakpoints: Vec<Rational>,
    pieces: Vec<Polynomial>,
    deltas: Vec<Delta>,
}

impl Default for SplineDistribution {
    fn default() -> Self {
        Self::zero()
    }
}

impl SplineDistribution {
    pub fn zero() -> Self {
        SplineDistribution { breakpoints: Vec::new(), pieces: vec![Polynomial::zero()], deltas: Vec::new() }
    }

    /// Builds and canonicalizes. `breakpoints` must be strictly increasing
    /// and `pieces.len() == breakpoints.len() + 1`.
    pub fn from_parts(breakpoints: Vec<Rational>, pieces: Vec<Polynomial>, deltas: Vec<Delta>) -> Self {
        assert_eq!(pieces.len(), breakpoints.len() + 1, "piece count must be breakpoints + 1");
        assert!(breakpoints.windows(2).all(|w| w[0] < w[1]), "breakpoints must increase strictly");
        let mut d = SplineDistribution { breakpoints, pieces, deltas: Vec::new() };
        d.set_deltas(deltas);
        d.merge_pieces();
        d
    }

    pub fn delta(point: Rational, order: u32, coeff: Cyclotomic) -> Self {
        Self::from_parts(Vec::new(), vec![Polynomial::zero()], vec![Delta { point, order, coeff }])
    }

    /// `coeff · H(ξ - m)(ξ - m)^d / d!` for `side = Plus`, and the left-supported
    /// `-coeff · H(m - ξ)(ξ - m)^d / d!` for `side = Minus`.
    pub fn truncated_power(point: Rational, degree: usize, coeff: &Cyclotomic, side: Sign) -> Self {
        let body = Polynomial::truncated_power_body(&point, degree).scale(coeff);
        let pieces = match side {
            Sign::Plus => vec![Polynomial::zero(), body],
            Sign::Minus => vec![body.neg(), Polynomial::zero()],
        };
        Self::from_parts(vec![point], pieces, Vec::new())
    }

    fn set_deltas(&mut self, deltas: Vec<Delta>) {
        let mut map: BTreeMap<(Rational, u32), Cyclotomic> = BTreeMap::new();
        for d in deltas {
            let slot = map.entry((d.point, d.order)).or_insert_with(Cyclotomic::zero);
            *slot = &*slot + &d.coeff;
        }
        self.deltas = map
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((point, order), coeff)| Delta { point, order, coeff })
            .collect();
    }

    fn merge_pieces(&mut self) {
        let mut bps = Vec::with_capacity(self.breakpoints.len());
        let mut pieces = Vec::with_capacity(self.pieces.len());
        let mut iter = self.pieces.drain(..);
        pieces.push(iter.next().expect("at least one piece"));
        for (bp, piece) in self.breakpoints.drain(..).zip(iter) {
            if pieces.last() != Some(&piece) {
                bps.push(bp);
                pieces.push(piece);
            }
        }
        self.breakpoints = bps;
        self.pieces = pieces;
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[Polynomial] {
        &self.pieces
    }

    pub fn deltas(&self) -> &[Delta] {
        &self.deltas
    }

    pub fn is_zero(&self) -> bool {
        self.spline_is_zero() && self.deltas.is_empty()
    }

    pub fn spline_is_zero(&self) -> bool {
        self.pieces.iter().all(Polynomial::is_zero)
    }

    /// Largest degree among nonzero pieces.
    pub fn max_degree(&self) -> Option<usize> {
        self.pieces.iter().filter_map(Polynomial::degree).max()
    }

    pub fn is_compactly_supported(&self) -> bool {
        self.pieces[0].is_zero() && self.pieces[self.pieces.len() - 1].is_zero()
    }

    /// Index of the piece governing `(v, v + t)` for `Plus`, `(v - t, v)` for `Minus`.
    pub fn piece_index(&self, v: &Rational, side: Sign) -> usize {
        match side {
            Sign::Plus => self.breakpoints.partition_point(|b| b <= v),
            Sign::Minus => self.breakpoints.partition_point(|b| b < v),
        }
    }

    /// Open interval `(lo, hi)` covered by piece `j`; `None` marks an infinite end.
    pub fn piece_interval(&self, j: usize) -> (Option<&Rational>, Option<&Rational>) {
        let lo = j.checked_sub(1).map(|i| &self.breakpoints[i]);
        (lo, self.breakpoints.get(j))
    }

    /// One-sided limit of the spline part at `v`; deltas are ignored.
    pub fn one_sided_limit(&self, v: &Rational, side: Sign) -> Cyclotomic {
        self.pieces[self.piece_index(v, side)].eval(v)
    }

    /// Value of the spline part at a point that is not a breakpoint.
    pub fn value_at(&self, x: &Rational) -> Option<Cyclotomic> {
        if self.breakpoints.binary_search(x).is_ok() {
            return None;
        }
        Some(self.one_sided_limit(x, Sign::Plus))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut bps: Vec<Rational> = self.breakpoints.iter().chain(&other.breakpoints).cloned().collect();
        bps.sort();
        bps.dedup();
        let piece_for = |d: &Self, j: usize| -> usize {
            match j {
                0 => 0,
                _ => d.breakpoints.partition_point(|b| b <= &bps[j - 1]),
            }
        };
        let pieces = (0..=bps.len())
            .map(|j| self.pieces[piece_for(self, j)].add(&other.pieces[piece_for(other, j)]))
            .collect();
        let deltas = self.deltas.iter().chain(&other.deltas).cloned().collect();
        Self::from_parts(bps, pieces, deltas)
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        Self::from_parts(
            self.breakpoints.clone(),
            self.pieces.iter().map(|p| p.scale(c)).collect(),
            self.deltas.iter().map(|d| Delta { coeff: &d.coeff * c, ..d.clone() }).collect(),
        )
    }

    /// Distributional derivative: piecewise derivative, jumps become `δ`
    /// masses, and every delta gains one order.
    pub fn derivative(&self) -> Self {
        let mut deltas: Vec<Delta> =
            self.deltas.iter().map(|d| Delta { order: d.order + 1, ..d.clone() }).collect();
        for (j, b) in self.breakpoints.iter().enumerate() {
            let jump = &self.pieces[j + 1].eval(b) - &self.pieces[j].eval(b);
            deltas.push(Delta { point: b.clone(), order: 0, coeff: jump });
        }
        Self::from_parts(
            self.breakpoints.clone(),
            self.pieces.iter().map(Polynomial::derivative).collect(),
            deltas,
        )
    }

    /// `∫ spline · f` over the bounded pieces; `None` unless compactly supported.
    pub fn spline_integral(&self, f: &Polynomial) -> Option<Cyclotomic> {
        if !self.is_compactly_supported() {
            return None;
        }
        Some(
            (1..self.pieces.len().saturating_sub(1))
                .filter(|&j| !self.pieces[j].is_zero())
                .map(|j| self.pieces[j].mul(f).integrate(&self.breakpoints[j - 1], &self.breakpoints[j]))
                .sum(),
        )
    }

    /// `sum coeff · (-1)^s f^{(s)}(point)` over the delta part.
    pub fn delta_pairing(&self, f: &Polynomial) -> Cyclotomic {
        self.deltas
            .iter()
            .map(|d| {
                let v = &d.coeff * &f.nth_derivative(d.order as usize).eval(&d.point);
                if d.order % 2 == 1 {
                    -v
                } else {
                    v
                }
            })
            .sum()
    }

    /// Full pairing with a polynomial test function (compact support required).
    pub fn pair(&self, f: &Polynomial) -> Option<Cyclotomic> {
        Some(&self.spline_integral(f)? + &self.delta_pairing(f))
    }

    /// True iff the distribution vanishes outside `[lo, hi]`.
    pub fn supported_in(&self, lo: &Rational, hi: &Rational) -> bool {
        let pieces_ok = self.pieces.iter().enumerate().all(|(j, p)| {
            if p.is_zero() {
                return true;
            }
            match self.piece_interval(j) {
                (Some(a), Some(b)) => a >= lo && b <= hi,
                _ => false,
            }
        });
        pieces_ok && self.deltas.iter().all(|d| &d.point >= lo && &d.point <= hi)
    }
}

/// Inverse Fourier transform of one term, for the pairing
/// `f̂(θ) = ∫ e^{iξθ} f(ξ) dξ`:
///
/// * `θ^s e^{imθ}  ↦  i^s δ_m^{(s)}`  (from `(-iθ)^s e^{imθ} ↦ δ_m^{(s)}`),
/// * `(θ+i0)^{-p} e^{imθ}  ↦  i^{-p} H(ξ-m)(ξ-m)^{p-1}/(p-1)!`,
/// * `(θ-i0)^{-p} e^{imθ}  ↦  -i^{-p} H(m-ξ)(ξ-m)^{p-1}/(p-1)!`.
pub fn inverse_fourier_term(term: &ThetaTerm) -> SplineDistribution {
    let m = Rational::from_integer(term.expo.into());
    if term.coeff.is_zero() {
        return SplineDistribution::zero();
    }
    if term.tpow >= 0 {
        let c = &term.coeff * &Cyclotomic::i_pow(term.tpow);
        SplineDistribution::delta(m, term.tpow as u32, c)
    } else {
        let p = -term.tpow;
        let c = &term.coeff * &Cyclotomic::i_pow(-p);
        SplineDistribution::truncated_power(m, (p - 1) as usize, &c, term.polarization)
    }
}

impl fmt::Display for SplineDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if !self.spline_is_zero() {
            for (j, p) in self.pieces.iter().enumerate() {
                let (lo, hi) = self.piece_interval(j);
                let lo = lo.map_or("-inf".to_string(), ToString::to_string);
                let hi = hi.map_or("+inf".to_string(), ToString::to_string);
                writeln!(f, "  ({lo}, {hi}): {p}")?;
            }
        }
        for d in &self.deltas {
            let prime = match d.order {
                0 => String::new(),
                s => format!("^({s})"),
            };
            writeln!(f, "  ({}) * delta_{{{}}}{}", d.coeff, d.point, prime)?;
        }
        Ok(())
    }
}

impl Zero for SplineDistribution {
    fn zero() -> Self {
        SplineDistribution::zero()
    }
    fn is_zero(&self) -> bool {
        SplineDistribution::is_zero(self)
    }
}

impl std::ops::Add for SplineDistribution {
    type Output = SplineDistribution;
    fn add(self, rhs: Self) -> Self {
        SplineDistribution::add(&self, &rhs)
    }
}
