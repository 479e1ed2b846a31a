//! Extensional Galois-connection checks between finite posets.

use serde::Serialize;

/// A pair `(p, q)` where `F(p) <= q` and `p <= G(q)` disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdjunctionWitness<P, Q> {
    pub p: P,
    pub q: Q,
    /// Truth value of `F(p) <= q`.
    pub left_holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AdjunctionVerdict<P, Q> {
    Holds { pairs: usize },
    Fails(AdjunctionWitness<P, Q>),
}

impl<P, Q> AdjunctionVerdict<P, Q> {
    pub fn holds(&self) -> bool {
        matches!(self, AdjunctionVerdict::Holds { .. })
    }
}

/// Check `F(p) <= q ⟺ p <= G(q)` on every pair of the given finite posets.
pub fn verify_adjunction<P, Q, FP, GQ>(
    ps: &[P],
    qs: &[Q],
    leq_p: impl Fn(&P, &P) -> bool,
    leq_q: impl Fn(&Q, &Q) -> bool,
    left: FP,
    right: GQ,
) -> AdjunctionVerdict<P, Q>
where
    P: Clone,
    Q: Clone,
    FP: Fn(&P) -> Q,
    GQ: Fn(&Q) -> P,
{
    let lefts: Vec<Q> = ps.iter().map(&left).collect();
    let rights: Vec<P> = qs.iter().map(&right).collect();
    for (p, fp) in ps.iter().zip(&lefts) {
        for (q, gq) in qs.iter().zip(&rights) {
            let l = leq_q(fp, q);
            if l != leq_p(p, gq) {
                return AdjunctionVerdict::Fails(AdjunctionWitness { p: p.clone(), q: q.clone(), left_holds: l });
            }
        }
    }
    AdjunctionVerdict::Holds { pairs: ps.len() * qs.len() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_pair_is_adjoint() {
        let c3 = [0u8, 1, 2];
        let v = verify_adjunction(&c3, &c3, |a, b| a <= b, |a, b| a <= b, |&p| p, |&q| q);
        assert_eq!(v, AdjunctionVerdict::Holds { pairs: 9 });
    }

    #[test]
    fn constant_top_is_not_left_adjoint_to_identity() {
        let c3 = [0u8, 1, 2];
        let v = verify_adjunction(&c3, &c3, |a, b| a <= b, |a, b| a <= b, |_| 2u8, |&q| q);
        assert_eq!(v, AdjunctionVerdict::Fails(AdjunctionWitness { p: 0, q: 0, left_holds: false }));
    }
}
