//! GL-monoid laws on the builtin chains and on their pointwise powers.

use fuzzint::lattice::Elem;
use fuzzint::monoid::{builtin_chain, residuum_by_join, validate_gl, ChainKind, GlConfig, GlMonoid};

fn chains(max: usize) -> impl Iterator<Item = (ChainKind, usize, GlMonoid)> {
    [ChainKind::Godel, ChainKind::Lukasiewicz]
        .into_iter()
        .flat_map(move |k| (2..=max).map(move |n| (k, n, builtin_chain(k, n).unwrap())))
}

fn elems(m: &GlMonoid) -> Vec<Elem> {
    m.lattice().elements().collect()
}

#[test]
fn residuation_on_every_triple() {
    for (kind, n, m) in chains(11) {
        let l = m.lattice();
        for &a in &elems(&m) {
            for &b in &elems(&m) {
                for &c in &elems(&m) {
                    assert_eq!(l.leq(m.tensor(a, b), c), l.leq(a, m.residuum(b, c)), "{kind} {n}");
                }
            }
        }
    }
}

#[test]
fn godel_residuum_closed_form() {
    for n in 2..=11 {
        let m = builtin_chain(ChainKind::Godel, n).unwrap();
        let l = m.lattice();
        for &a in &elems(&m) {
            for &b in &elems(&m) {
                let closed = if l.leq(a, b) { l.top() } else { b };
                assert_eq!(m.residuum(a, b), closed);
                assert_eq!(residuum_by_join(m.cqml(), a, b), closed);
            }
        }
    }
}

#[test]
fn lukasiewicz_values() {
    // On k/(n-1): a ⊗ b = max(0, a + b - 1), a → b = min(1, 1 - a + b).
    for n in 2..=11 {
        let m = builtin_chain(ChainKind::Lukasiewicz, n).unwrap();
        let top = n - 1;
        for a in 0..n {
            for b in 0..n {
                let (ea, eb) = (Elem(a as u16), Elem(b as u16));
                assert_eq!(m.tensor(ea, eb).index(), (a + b).saturating_sub(top));
                assert_eq!(m.residuum(ea, eb).index(), (top + b).saturating_sub(a).min(top));
            }
        }
    }
}

#[test]
fn divisibility_and_commutativity() {
    for (_, _, m) in chains(11) {
        let l = m.lattice();
        for &a in &elems(&m) {
            assert_eq!(m.tensor(a, l.top()), a);
            for &b in &elems(&m) {
                assert_eq!(m.tensor(a, b), m.tensor(b, a));
                if l.leq(a, b) {
                    let g = m.divisor(a, b).expect("divisor recorded");
                    assert_eq!(m.tensor(b, g), a);
                }
            }
        }
    }
}

#[test]
fn pointwise_powers_are_gl_monoids() {
    for (kind, n, m) in chains(3) {
        for k in 1..=2 {
            let power = m.cqml().pointwise_power(k, 64).unwrap();
            let gl = validate_gl(power, &GlConfig::default()).unwrap_or_else(|e| panic!("{kind} {n}^{k}: {e}"));
            let l = gl.lattice();
            for &a in &elems(&gl) {
                for &b in &elems(&gl) {
                    for &c in &elems(&gl) {
                        assert_eq!(l.leq(gl.tensor(a, b), c), l.leq(a, gl.residuum(b, c)));
                    }
                }
            }
        }
    }
}
