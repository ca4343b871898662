//! Dempster's rule of combination.
//!
//! The binary frame gets two independent implementations: one on masses
//! and one on `⟨bel, pl⟩` pairs. A brute-force combiner over arbitrary
//! small frames serves as the reference both are tested against.

use std::fmt;

use crate::binary_frame::{BeliefInterval, MassAssignment};
use crate::error::{EvidenceError, Result};

/// Normaliser below which the combination is treated as total conflict.
pub const CONFLICT_THRESHOLD: f64 = 1e-12;

/// Largest frame accepted by [`combine_general`].
pub const MAX_GENERAL_FRAME: usize = 10;

/// Dempster's rule on masses:
///
/// ```text
/// m({H})  = λ [m1(H) m2(H) + m1(H) m2(Θ) + m1(Θ) m2(H)]
/// m({¬H}) = λ [m1(¬H) m2(¬H) + m1(¬H) m2(Θ) + m1(Θ) m2(¬H)]
/// m(Θ)    = λ m1(Θ) m2(Θ)
/// λ = 1 / (1 - m1(H) m2(¬H) - m1(¬H) m2(H))
/// ```
pub fn combine_mass(m1: &MassAssignment, m2: &MassAssignment) -> Result<MassAssignment> {
    let (h1, n1, t1) = (m1.m_h(), m1.m_not_h(), m1.m_theta());
    let (h2, n2, t2) = (m2.m_h(), m2.m_not_h(), m2.m_theta());

    let normaliser = 1.0 - h1 * n2 - n1 * h2;
    if normaliser < CONFLICT_THRESHOLD {
        return Err(EvidenceError::TotalConflict {
            left: m1.to_string(),
            right: m2.to_string(),
        });
    }
    let lambda = normaliser.recip();

    let m_h = lambda * (h1 * h2 + h1 * t2 + t1 * h2);
    let m_not_h = lambda * (n1 * n2 + n1 * t2 + t1 * n2);
    let m_theta = lambda * (t1 * t2);
    Ok(MassAssignment::from_proportional(m_h, m_not_h, m_theta))
}

/// Dempster's rule written on `⟨b, p⟩` pairs:
///
/// ```text
/// b = (b1 p2 + b2 p1 - b1 b2) / (1 - b1 (1 - p2) - b2 (1 - p1))
/// p = p1 p2                   / (1 - b1 (1 - p2) - b2 (1 - p1))
/// ```
///
/// The result is assembled from the factored numerators of `b`, `p - b`
/// and `1 - p`, so that narrow intervals keep their width to full
/// relative precision. The vacuous interval is returned-through exactly.
pub fn combine_interval(x1: &BeliefInterval, x2: &BeliefInterval) -> Result<BeliefInterval> {
    if x1.is_vacuous() {
        return Ok(*x2);
    }
    if x2.is_vacuous() {
        return Ok(*x1);
    }
    let (b1, p1, w1, d1) = (x1.bel(), x1.pl(), x1.width(), x1.disbelief());
    let (b2, w2, d2) = (x2.bel(), x2.width(), x2.disbelief());

    let denominator = 1.0 - b1 * d2 - b2 * d1;
    if denominator < CONFLICT_THRESHOLD {
        return Err(EvidenceError::TotalConflict {
            left: x1.to_string(),
            right: x2.to_string(),
        });
    }

    // b1 p2 + b2 p1 - b1 b2 = b1 (p2 - b2) + b2 p1
    let bel = b1 * w2 + b2 * p1;
    // p - b = (p1 - b1)(p2 - b2) / D
    let width = w1 * w2;
    // 1 - p = ((1 - p1)(1 - b2) + (1 - p2)(p1 - b1)) / D
    let disbelief = d1 * (1.0 - b2) + d2 * w1;
    debug_assert!(((bel + width + disbelief) - denominator).abs() < 1e-9);
    Ok(BeliefInterval::from_proportional(bel, width, disbelief))
}

/// Left fold of [`combine_interval`] over a sequence, starting from the
/// vacuous interval.
pub fn combine_all<'a>(
    items: impl IntoIterator<Item = &'a BeliefInterval>,
) -> Result<BeliefInterval> {
    items
        .into_iter()
        .try_fold(BeliefInterval::VACUOUS, |acc, x| combine_interval(&acc, x))
}

/// Bernoulli's rule for two simple supports pointing the same way.
pub fn bernoulli_combine(s1: f64, s2: f64) -> f64 {
    1.0 - (1.0 - s1) * (1.0 - s2)
}

/// A basic probability assignment over a frame of up to
/// [`MAX_GENERAL_FRAME`] atoms. Subsets are bitsets over atom indices;
/// `masses[s]` is the mass of subset `s`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralMass {
    frame_size: usize,
    masses: Vec<f64>,
}

impl GeneralMass {
    pub fn new(frame_size: usize, focal: impl IntoIterator<Item = (u32, f64)>) -> Result<Self> {
        if frame_size == 0 || frame_size > MAX_GENERAL_FRAME {
            return Err(EvidenceError::OversizeFrame(frame_size));
        }
        let len = 1usize << frame_size;
        let mut masses = vec![0.0; len];
        for (subset, mass) in focal {
            let idx = subset as usize;
            if idx >= len {
                return Err(EvidenceError::invalid(
                    "general mass",
                    format!("subset {subset:#b} is not in a frame of {frame_size} atoms"),
                ));
            }
            if !mass.is_finite() || !(0.0..=1.0).contains(&mass) {
                return Err(EvidenceError::invalid(
                    "general mass",
                    format!("mass {mass} outside [0, 1]"),
                ));
            }
            masses[idx] += mass;
        }
        if masses[0] != 0.0 {
            return Err(EvidenceError::invalid(
                "general mass",
                "the empty set must carry zero mass",
            ));
        }
        let sum: f64 = masses.iter().sum();
        if (sum - 1.0).abs() > crate::binary_frame::MASS_SUM_TOLERANCE {
            return Err(EvidenceError::invalid(
                "general mass",
                format!("masses sum to {sum}"),
            ));
        }
        Ok(GeneralMass { frame_size, masses })
    }

    pub fn vacuous(frame_size: usize) -> Result<Self> {
        let full = (1u32 << frame_size.min(31)) - 1;
        Self::new(frame_size, [(full, 1.0)])
    }

    /// Embeds a binary-frame assignment: atom 0 is `H`, atom 1 is `¬H`.
    pub fn from_binary(m: &MassAssignment) -> Self {
        GeneralMass {
            frame_size: 2,
            masses: vec![0.0, m.m_h(), m.m_not_h(), m.m_theta()],
        }
    }

    pub fn to_binary(&self) -> Result<MassAssignment> {
        if self.frame_size != 2 {
            return Err(EvidenceError::FrameMismatch {
                left: self.frame_size,
                right: 2,
            });
        }
        MassAssignment::new(self.masses[1], self.masses[2], self.masses[3])
    }

    pub fn frame_size(&self) -> usize {
        self.frame_size
    }

    pub fn mass(&self, subset: u32) -> f64 {
        self.masses.get(subset as usize).copied().unwrap_or(0.0)
    }

    /// Focal elements in ascending bitset order.
    pub fn focal(&self) -> impl Iterator<Item = (u32, f64)> + '_ {
        self.masses
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0.0)
            .map(|(s, &m)| (s as u32, m))
    }
}

impl fmt::Display for GeneralMass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (s, m)) in self.focal().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{s:#b}: {m}")?;
        }
        write!(f, "}}")
    }
}

/// Brute-force Dempster combination over all pairs of subsets.
pub fn combine_general(g1: &GeneralMass, g2: &GeneralMass) -> Result<GeneralMass> {
    if g1.frame_size != g2.frame_size {
        return Err(EvidenceError::FrameMismatch {
            left: g1.frame_size,
            right: g2.frame_size,
        });
    }
    let len = g1.masses.len();
    let mut joint = vec![0.0; len];
    for (b, &mb) in g1.masses.iter().enumerate() {
        if mb == 0.0 {
            continue;
        }
        for (c, &mc) in g2.masses.iter().enumerate() {
            if mc != 0.0 {
                joint[b & c] += mb * mc;
            }
        }
    }
    let conflict = joint[0];
    let normaliser = 1.0 - conflict;
    if normaliser < CONFLICT_THRESHOLD {
        return Err(EvidenceError::TotalConflict {
            left: g1.to_string(),
            right: g2.to_string(),
        });
    }
    let lambda = normaliser.recip();
    joint[0] = 0.0;
    for m in joint.iter_mut().skip(1) {
        *m *= lambda;
    }
    Ok(GeneralMass {
        frame_size: g1.frame_size,
        masses: joint,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binary_frame::{interval_to_mass, mass_to_interval};
    use proptest::prelude::*;

    fn mass(h: f64, n: f64, t: f64) -> MassAssignment {
        MassAssignment::new(h, n, t).unwrap()
    }

    fn iv(b: f64, p: f64) -> BeliefInterval {
        BeliefInterval::new(b, p).unwrap()
    }

    #[test]
    fn vacuous_mass_is_identity() {
        let m2 = mass(0.3, 0.2, 0.5);
        assert_eq!(combine_mass(&MassAssignment::VACUOUS, &m2).unwrap(), m2);
    }

    #[test]
    fn opposing_simple_supports_split_evenly() {
        let r = combine_mass(&mass(0.5, 0.0, 0.5), &mass(0.0, 0.5, 0.5)).unwrap();
        for v in [r.m_h(), r.m_not_h(), r.m_theta()] {
            assert!((v - 1.0 / 3.0).abs() < 1e-15);
        }
        // s1(1-s2)/(1-s1 s2) with s1 = s2 = 1/2
        let s = 0.5f64;
        assert!((r.m_h() - s * (1.0 - s) / (1.0 - s * s)).abs() < 1e-15);
    }

    #[test]
    fn certain_opposites_are_total_conflict() {
        let err = combine_mass(&mass(1.0, 0.0, 0.0), &mass(0.0, 1.0, 0.0)).unwrap_err();
        assert!(matches!(err, EvidenceError::TotalConflict { .. }));
        let err = combine_interval(&iv(1.0, 1.0), &iv(0.0, 0.0)).unwrap_err();
        assert!(matches!(err, EvidenceError::TotalConflict { .. }));
    }

    #[test]
    fn interval_examples() {
        let r = combine_interval(&iv(0.5, 1.0), &iv(0.5, 1.0)).unwrap();
        assert_eq!((r.bel(), r.pl()), (0.75, 1.0));

        let r = combine_interval(&iv(0.5, 1.0), &iv(0.0, 0.5)).unwrap();
        assert!((r.bel() - 1.0 / 3.0).abs() < 1e-15);
        assert!((r.pl() - 2.0 / 3.0).abs() < 1e-15);
        let via_mass = mass_to_interval(
            &combine_mass(
                &interval_to_mass(&iv(0.5, 1.0)),
                &interval_to_mass(&iv(0.0, 0.5)),
            )
            .unwrap(),
        );
        assert!((via_mass.bel() - r.bel()).abs() < 1e-15);
        assert!((via_mass.pl() - r.pl()).abs() < 1e-15);

        let x = iv(0.3, 0.8);
        assert_eq!(combine_interval(&BeliefInterval::VACUOUS, &x).unwrap(), x);
        assert_eq!(combine_interval(&x, &BeliefInterval::VACUOUS).unwrap(), x);
    }

    #[test]
    fn bernoulli_examples() {
        assert_eq!(bernoulli_combine(0.0, 0.37), 0.37);
        assert_eq!(bernoulli_combine(0.5, 0.5), 0.75);
        assert_eq!(bernoulli_combine(1.0, 0.37), 1.0);
    }

    #[test]
    fn general_examples() {
        let g2 = GeneralMass::new(2, [(0b01, 0.3), (0b10, 0.2), (0b11, 0.5)]).unwrap();
        let r = combine_general(&GeneralMass::vacuous(2).unwrap(), &g2).unwrap();
        assert_eq!(r, g2);

        let g1 = GeneralMass::new(2, [(0b01, 0.5), (0b11, 0.5)]).unwrap();
        let g2 = GeneralMass::new(2, [(0b10, 0.5), (0b11, 0.5)]).unwrap();
        let r = combine_general(&g1, &g2).unwrap();
        for s in [0b01, 0b10, 0b11] {
            assert!((r.mass(s) - 1.0 / 3.0).abs() < 1e-15);
        }
        assert_eq!(r.mass(0), 0.0);

        let g1 = GeneralMass::new(3, [(0b001, 1.0)]).unwrap();
        let g2 = GeneralMass::new(3, [(0b011, 1.0)]).unwrap();
        let r = combine_general(&g1, &g2).unwrap();
        assert_eq!(r.focal().collect::<Vec<_>>(), vec![(0b001, 1.0)]);
    }

    #[test]
    fn general_errors() {
        let a = GeneralMass::vacuous(2).unwrap();
        let b = GeneralMass::vacuous(3).unwrap();
        assert!(matches!(
            combine_general(&a, &b),
            Err(EvidenceError::FrameMismatch { left: 2, right: 3 })
        ));
        assert!(matches!(
            GeneralMass::vacuous(11),
            Err(EvidenceError::OversizeFrame(11))
        ));
        let x = GeneralMass::new(3, [(0b001, 1.0)]).unwrap();
        let y = GeneralMass::new(3, [(0b110, 1.0)]).unwrap();
        assert!(matches!(
            combine_general(&x, &y),
            Err(EvidenceError::TotalConflict { .. })
        ));
        assert!(GeneralMass::new(2, [(0, 0.5), (3, 0.5)]).is_err());
        assert!(GeneralMass::new(2, [(4, 1.0)]).is_err());
    }

    fn any_interval() -> impl Strategy<Value = BeliefInterval> {
        (0.0f64..1.0, 0.0f64..1.0, 0.0f64..1.0)
            .prop_filter("nonzero", |(a, b, c)| a + b + c > 1e-3)
            .prop_map(|(a, b, c)| mass_to_interval(&MassAssignment::from_proportional(a, b, c)))
    }

    fn not_conflicting(x: &BeliefInterval, y: &BeliefInterval) -> bool {
        1.0 - x.bel() * y.disbelief() - y.bel() * x.disbelief() > 1e-6
    }

    proptest! {
        #[test]
        fn interval_rule_is_commutative(x in any_interval(), y in any_interval()) {
            prop_assume!(not_conflicting(&x, &y));
            let a = combine_interval(&x, &y).unwrap();
            let b = combine_interval(&y, &x).unwrap();
            prop_assert!((a.bel() - b.bel()).abs() <= 1e-12);
            prop_assert!((a.pl() - b.pl()).abs() <= 1e-12);
        }

        #[test]
        fn interval_rule_is_associative(
            x in any_interval(), y in any_interval(), z in any_interval()
        ) {
            let left = combine_interval(&x, &y).and_then(|xy| combine_interval(&xy, &z));
            let right = combine_interval(&y, &z).and_then(|yz| combine_interval(&x, &yz));
            if let (Ok(l), Ok(r)) = (left, right) {
                // Both groupings must be far from conflict for a meaningful comparison.
                prop_assume!(not_conflicting(&x, &y) && not_conflicting(&y, &z));
                prop_assert!((l.bel() - r.bel()).abs() <= 1e-9, "{} vs {}", l, r);
                prop_assert!((l.pl() - r.pl()).abs() <= 1e-9, "{} vs {}", l, r);
            }
        }

        #[test]
        fn mass_rule_matches_interval_rule(x in any_interval(), y in any_interval()) {
            prop_assume!(not_conflicting(&x, &y));
            let via_mass = mass_to_interval(
                &combine_mass(&interval_to_mass(&x), &interval_to_mass(&y)).unwrap(),
            );
            let direct = combine_interval(&x, &y).unwrap();
            prop_assert!((via_mass.bel() - direct.bel()).abs() <= 1e-12);
            prop_assert!((via_mass.pl() - direct.pl()).abs() <= 1e-12);
        }

        #[test]
        fn simple_supports_follow_bernoulli(s1 in 0.0f64..=1.0, s2 in 0.0f64..=1.0) {
            let r = combine_interval(&iv(s1, 1.0), &iv(s2, 1.0)).unwrap();
            prop_assert!((r.bel() - bernoulli_combine(s1, s2)).abs() <= 1e-12);
            prop_assert_eq!(r.pl(), 1.0);
        }
    }
}
