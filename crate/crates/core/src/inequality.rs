//! Integer affine inequalities over the 2n binary difference variables.
//!
//! An [`Inequality`] stores `a·v + b >= 0` in normalized form: the gcd of all
//! nonzero coefficient magnitudes and the constant is 1. Normalization never
//! flips orientation, so two inequalities describe the same halfspace cut iff
//! their normalized forms are identical.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bitset::Bitset;
use crate::error::Error;
use crate::sbox::DiffPoint;
use crate::Result;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Inequality {
    coeffs: Vec<i64>,
    constant: i64,
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Inequality {
    /// Builds a normalized inequality `coeffs·v + constant >= 0`.
    ///
    /// All-zero coefficient vectors are rejected: they describe either a
    /// tautology or a contradiction, never a usable cut.
    pub fn new(coeffs: Vec<i64>, constant: i64) -> Result<Self> {
        if coeffs.iter().all(|&c| c == 0) {
            return Err(Error::DegenerateInequality);
        }
        let mut g = coeffs.iter().fold(0, |acc, &c| gcd(acc, c));
        g = gcd(g, constant);
        debug_assert!(g > 0);
        Ok(Inequality {
            coeffs: coeffs.iter().map(|c| c / g).collect(),
            constant: constant / g,
        })
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn constant(&self) -> i64 {
        self.constant
    }

    /// Evaluates `a·p + b`. The point satisfies the inequality iff the result
    /// is >= 0 and lies on the hyperplane iff it is 0.
    pub fn evaluate(&self, p: DiffPoint) -> Result<i64> {
        if p.dim() != self.coeffs.len() {
            return Err(Error::DimensionMismatch {
                expected: self.coeffs.len(),
                got: p.dim(),
            });
        }
        Ok(self.eval_unchecked(p))
    }

    #[inline]
    pub(crate) fn eval_unchecked(&self, p: DiffPoint) -> i64 {
        let mut acc = self.constant;
        let dim = self.coeffs.len();
        let idx = p.index();
        for (i, &c) in self.coeffs.iter().enumerate() {
            acc += c * ((idx >> (dim - 1 - i)) & 1) as i64;
        }
        acc
    }

    /// The conditional cut that excludes exactly `p` from the binary cube:
    /// every variable set in `p` enters negated, every cleared one enters
    /// positively, and the constant is weight(p) - 1. The result evaluates to
    /// -1 at `p` and to hamming_distance - 1 >= 0 elsewhere.
    pub fn excluding(p: DiffPoint) -> Inequality {
        let coeffs: Vec<i64> = p.bits().map(|b| if b == 1 { -1 } else { 1 }).collect();
        let constant = p.weight() as i64 - 1;
        Inequality { coeffs, constant }
    }

    /// Coefficient-wise sum of several inequalities, constants included.
    /// Returns `None` when the coefficients cancel to zero (a tautology,
    /// useless as a cut).
    pub fn sum<'a, I: IntoIterator<Item = &'a Inequality>>(items: I) -> Option<Inequality> {
        let mut it = items.into_iter();
        let first = it.next()?;
        let mut coeffs = first.coeffs.clone();
        let mut constant = first.constant;
        for ineq in it {
            debug_assert_eq!(ineq.coeffs.len(), coeffs.len());
            for (a, b) in coeffs.iter_mut().zip(&ineq.coeffs) {
                *a += b;
            }
            constant += ineq.constant;
        }
        Inequality::new(coeffs, constant).ok()
    }

    /// Renders one line in the published listing style, e.g.
    /// `- 1x3 - 2x2 - 2x1 - 1x0 + 4y3 + 5y2 + 5y1 + 5y0 >= -4`
    /// (variables named x{n-1}..x0 y{n-1}..y0, the constant moved to the
    /// right-hand side with its sign flipped).
    pub fn render_text(&self) -> String {
        let n = self.coeffs.len() / 2;
        let mut out = String::new();
        let mut term = |c: i64, name: &str| {
            if !out.is_empty() {
                out.push(' ');
            }
            out.push(if c < 0 { '-' } else { '+' });
            out.push_str(&format!(" {}{}", c.abs(), name));
        };
        for i in 0..n {
            term(self.coeffs[i], &format!("x{}", n - 1 - i));
        }
        for i in 0..n {
            term(self.coeffs[n + i], &format!("y{}", n - 1 - i));
        }
        format!("{out} >= {}", -self.constant)
    }

    /// Parses the listing style accepted by [`render_text`], plus the variant
    /// with the constant written on the left (`... + 4 >= 0`).
    ///
    /// [`render_text`]: Inequality::render_text
    pub fn parse_text(line: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse(format!("{msg} in inequality {line:?}"));
        let (lhs, rhs) = line
            .split_once(">=")
            .ok_or_else(|| bad("missing \">=\""))?;
        let rhs: i64 = rhs
            .trim()
            .parse()
            .map_err(|_| bad("bad right-hand side"))?;

        let mut x_terms: Vec<(usize, i64)> = Vec::new();
        let mut y_terms: Vec<(usize, i64)> = Vec::new();
        let mut lhs_const = 0i64;
        let mut sign = 1i64;
        let mut pending: Option<String> = None;

        let mut flush = |tok: &str, sign: i64| -> Result<()> {
            if tok.is_empty() {
                return Ok(());
            }
            let (block, rest) = match tok.find(['x', 'y']) {
                Some(pos) => (tok.as_bytes()[pos], (&tok[..pos], &tok[pos + 1..])),
                None => {
                    let v: i64 = tok.parse().map_err(|_| bad("bad constant term"))?;
                    lhs_const += sign * v;
                    return Ok(());
                }
            };
            let (coeff_str, var_str) = rest;
            let coeff: i64 = if coeff_str.is_empty() {
                1
            } else {
                coeff_str.parse().map_err(|_| bad("bad coefficient"))?
            };
            let var: usize = var_str.parse().map_err(|_| bad("bad variable index"))?;
            let target = if block == b'x' {
                &mut x_terms
            } else {
                &mut y_terms
            };
            target.push((var, sign * coeff));
            Ok(())
        };

        for raw in lhs.split_whitespace() {
            match raw {
                "+" => {
                    if let Some(tok) = pending.take() {
                        flush(&tok, sign)?;
                    }
                    sign = 1;
                }
                "-" => {
                    if let Some(tok) = pending.take() {
                        flush(&tok, sign)?;
                    }
                    sign = -1;
                }
                tok => {
                    if let Some(prev) = pending.take() {
                        flush(&prev, sign)?;
                        sign = 1;
                    }
                    // signs may also be glued to the token
                    let (s, body) = match tok.strip_prefix('-') {
                        Some(b) => (-sign, b),
                        None => (sign, tok.strip_prefix('+').unwrap_or(tok)),
                    };
                    pending = Some(body.to_string());
                    sign = s;
                }
            }
        }
        if let Some(tok) = pending.take() {
            flush(&tok, sign)?;
        }

        let max_var = x_terms
            .iter()
            .chain(&y_terms)
            .map(|&(v, _)| v)
            .max()
            .ok_or_else(|| bad("no variables"))?;
        let n = max_var + 1;
        let mut coeffs = vec![0i64; 2 * n];
        for (v, c) in x_terms {
            coeffs[n - 1 - v] += c;
        }
        for (v, c) in y_terms {
            coeffs[n + n - 1 - v] += c;
        }
        Inequality::new(coeffs, lhs_const - rhs)
    }
}

impl fmt::Debug for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ineq[{}]", self.render_text())
    }
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_text())
    }
}

/// An inequality annotated with the exact set of impossible points it
/// removes. Bit i of `removed` refers to position i in the (sorted)
/// impossible list the set was computed against.
#[derive(Clone, Debug)]
pub struct RemovalSet {
    pub inequality: Inequality,
    pub removed: Bitset,
}

impl RemovalSet {
    /// Evaluates `inequality` on every impossible point; bit i is set iff
    /// the point at position i is violated.
    pub fn compute(inequality: Inequality, impossible: &[DiffPoint]) -> RemovalSet {
        let mut removed = Bitset::new(impossible.len());
        for (i, &p) in impossible.iter().enumerate() {
            debug_assert_eq!(p.dim(), inequality.dim());
            if inequality.eval_unchecked(p) < 0 {
                removed.set(i);
            }
        }
        RemovalSet {
            inequality,
            removed,
        }
    }

    pub fn removed_count(&self) -> usize {
        self.removed.count()
    }
}

/// First point in `points` violated by `ineq`, if any. Pool members must
/// never violate a possible point; this is the check.
pub fn first_violated(ineq: &Inequality, points: &[DiffPoint]) -> Option<DiffPoint> {
    points
        .iter()
        .copied()
        .find(|&p| ineq.eval_unchecked(p) < 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn point(n: u32, input: u8, output: u8) -> DiffPoint {
        DiffPoint::from_diffs(n, input, output)
    }

    /// The worked 4-bit example: the cut excluding (1010 -> 0111).
    fn example_cut() -> Inequality {
        Inequality::new(vec![-1, 1, -1, 1, 1, -1, -1, -1], 4).unwrap()
    }

    #[test]
    fn evaluate_example() {
        let p = point(4, 0b1010, 0b0111);
        assert_eq!(example_cut().evaluate(p).unwrap(), -1);
        let zero = point(4, 0, 0);
        assert_eq!(example_cut().evaluate(zero).unwrap(), 4);
    }

    #[test]
    fn evaluate_dimension_mismatch() {
        let p = DiffPoint::from_diffs(3, 1, 1);
        assert!(matches!(
            example_cut().evaluate(p),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn excluding_matches_example() {
        let p = point(4, 0b1010, 0b0111);
        assert_eq!(Inequality::excluding(p), example_cut());
    }

    #[test]
    fn excluding_corner_points() {
        let origin = point(4, 0, 0);
        let cut = Inequality::excluding(origin);
        assert_eq!(cut.coeffs(), &[1i64; 8][..]);
        assert_eq!(cut.constant(), -1);

        let ones = point(4, 0xF, 0xF);
        let cut = Inequality::excluding(ones);
        assert_eq!(cut.coeffs(), &[-1i64; 8][..]);
        assert_eq!(cut.constant(), 7);
    }

    #[test]
    fn excluding_violates_only_its_point() {
        for idx in [0u16, 1, 0xA7, 0xFF, 0x42] {
            let p = DiffPoint::new(8, idx);
            let cut = Inequality::excluding(p);
            for q in 0..256u16 {
                let val = cut.evaluate(DiffPoint::new(8, q)).unwrap();
                if q == idx {
                    assert_eq!(val, -1);
                } else {
                    assert!(val >= 0);
                }
            }
        }
    }

    #[test]
    fn normalization_rejects_zero() {
        assert!(matches!(
            Inequality::new(vec![0; 8], 5),
            Err(Error::DegenerateInequality)
        ));
    }

    #[test]
    fn sum_of_opposing_sides_is_none() {
        let a = Inequality::new(vec![1, 0, 0, 0, 0, 0, 0, 0], 0).unwrap();
        let b = Inequality::new(vec![-1, 0, 0, 0, 0, 0, 0, 0], 1).unwrap();
        assert!(Inequality::sum([&a, &b]).is_none());
    }

    #[test]
    fn removal_set_of_cut_is_singleton() {
        let impossible: Vec<DiffPoint> = (10..20).map(|i| DiffPoint::new(8, i)).collect();
        let cut = Inequality::excluding(impossible[3]);
        let rs = RemovalSet::compute(cut, &impossible);
        assert_eq!(rs.removed_count(), 1);
        assert!(rs.removed.get(3));
    }

    #[test]
    fn all_positive_removes_nothing() {
        let ineq = Inequality::new(vec![1; 8], 0).unwrap();
        let impossible: Vec<DiffPoint> = (0..256).map(|i| DiffPoint::new(8, i)).collect();
        let rs = RemovalSet::compute(ineq, &impossible);
        assert_eq!(rs.removed_count(), 0);
    }

    #[test]
    fn render_and_parse_round_trip() {
        let ineq = example_cut();
        let text = ineq.render_text();
        assert_eq!(text, "- 1x3 + 1x2 - 1x1 + 1x0 + 1y3 - 1y2 - 1y1 - 1y0 >= -4");
        assert_eq!(Inequality::parse_text(&text).unwrap(), ineq);
    }

    #[test]
    fn parse_published_listing_line() {
        let ineq =
            Inequality::parse_text("- 1x3 - 2x2 - 2x1 - 1x0 + 4y3 + 5y2 + 5y1 + 5y0 >= 0")
                .unwrap();
        // x3 is the least significant input bit, so it maps to coeff slot 0... check:
        // slots are (x0..x3, y0..y3) with x0 most significant.
        assert_eq!(ineq.coeffs(), &[-1, -2, -2, -1, 5, 5, 5, 4]);
        assert_eq!(ineq.constant(), 0);
    }

    #[test]
    fn parse_constant_on_left() {
        let a = Inequality::parse_text(
            "- 1x0 + 1x1 - 1x2 + 1x3 + 1y0 - 1y1 - 1y2 - 1y3 + 4 >= 0",
        )
        .unwrap();
        assert_eq!(a, example_cut());
    }

    proptest! {
        /// Scaling by any positive integer then normalizing is the identity,
        /// and normalization is idempotent.
        #[test]
        fn normalization_scale_stable(
            coeffs in proptest::collection::vec(-9i64..=9, 8),
            constant in -20i64..=20,
            scale in 1i64..=7,
        ) {
            prop_assume!(coeffs.iter().any(|&c| c != 0));
            let base = Inequality::new(coeffs.clone(), constant).unwrap();
            let scaled = Inequality::new(
                coeffs.iter().map(|c| c * scale).collect(),
                constant * scale,
            ).unwrap();
            prop_assert_eq!(&base, &scaled);
            let renorm = Inequality::new(base.coeffs().to_vec(), base.constant()).unwrap();
            prop_assert_eq!(&base, &renorm);
        }

        /// evaluate is the constant plus the coefficients at set bits.
        #[test]
        fn evaluate_is_linear(
            coeffs in proptest::collection::vec(-9i64..=9, 8),
            constant in -20i64..=20,
            index in 0u16..256,
        ) {
            prop_assume!(coeffs.iter().any(|&c| c != 0));
            let ineq = Inequality::new(coeffs, constant).unwrap();
            let p = DiffPoint::new(8, index);
            let direct: i64 = ineq.constant()
                + (0..8).filter(|&i| p.bit(i) == 1).map(|i| ineq.coeffs()[i]).sum::<i64>();
            prop_assert_eq!(ineq.evaluate(p).unwrap(), direct);
        }

        /// Single-point cuts violate their point and nothing else.
        #[test]
        fn cut_excludes_exactly_one(index in 0u16..256) {
            let p = DiffPoint::new(8, index);
            let cut = Inequality::excluding(p);
            for q in 0..256u16 {
                let v = cut.evaluate(DiffPoint::new(8, q)).unwrap();
                prop_assert_eq!(v < 0, q == index);
            }
        }

        /// Text rendering round-trips through the parser.
        #[test]
        fn text_round_trip(
            coeffs in proptest::collection::vec(-9i64..=9, 8),
            constant in -20i64..=20,
        ) {
            prop_assume!(coeffs.iter().any(|&c| c != 0));
            let ineq = Inequality::new(coeffs, constant).unwrap();
            let parsed = Inequality::parse_text(&ineq.render_text()).unwrap();
            prop_assert_eq!(parsed, ineq);
        }
    }
}
