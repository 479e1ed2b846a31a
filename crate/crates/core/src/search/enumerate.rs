use std::sync::Arc;

use crate::interior::InteriorMap;
use crate::lattice::{Elem, FiniteLattice};
use crate::monoid::{builtin_chain, validate_cqml, ChainKind, Cqml};
use crate::powerset::{check_phi_op, Code, Ground, GroundMorphism, PowersetIndex};

use super::{BasisFamily, SearchBounds, SearchError};

fn chain(kind: ChainKind, n: usize) -> Arc<Cqml> {
    Arc::new(builtin_chain(kind, n).expect("n >= 2").into_cqml())
}

fn diamond() -> FiniteLattice {
    let names = ["0", "a", "b", "1"].map(String::from).to_vec();
    #[rustfmt::skip]
    let leq = [
        true, true, true, true,
        false, true, false, true,
        false, false, true, true,
        false, false, false, true,
    ];
    FiniteLattice::from_matrix(names, leq.to_vec(), 4).expect("diamond is a lattice")
}

fn constant_top(l: FiniteLattice, label: &str) -> Arc<Cqml> {
    let n = l.len();
    let top = l.top();
    Arc::new(validate_cqml(l, vec![top; n * n]).expect("constant top is a CQML").with_label(label))
}

fn meet_tensor(l: FiniteLattice, label: &str) -> Arc<Cqml> {
    let n = l.len();
    let tensor = (0..n * n).map(|k| l.meet2(Elem((k / n) as u16), Elem((k % n) as u16))).collect();
    Arc::new(validate_cqml(l, tensor).expect("meet is a CQML").with_label(label))
}

/// Bases admitted by the bounds, smallest first: `C2`, then for each size
/// the Gödel and Łukasiewicz chains, plus (extended family) non-GL CQMLs.
pub fn basis_catalog(bounds: &SearchBounds) -> Vec<Arc<Cqml>> {
    let mut out = Vec::new();
    for n in 2..=bounds.max_lattice {
        out.push(chain(ChainKind::Godel, n));
        if n >= 3 {
            out.push(chain(ChainKind::Lukasiewicz, n));
        }
        if bounds.family == BasisFamily::Extended {
            if n == 3 {
                let l = FiniteLattice::chain(&["0", "1/2", "1"]).expect("chain");
                out.push(constant_top(l, "T3"));
            }
            if n == 4 {
                out.push(meet_tensor(diamond(), "D4"));
                out.push(constant_top(diamond(), "T4"));
            }
        }
    }
    out
}

/// Every ground `(X, L)` with `1 <= |X| <= max_points` and `L` from the
/// catalog, ordered by point count, then catalog order.
pub fn grounds(bounds: &SearchBounds) -> Vec<Ground> {
    let catalog = basis_catalog(bounds);
    (1..=bounds.max_points).flat_map(|n| catalog.iter().map(move |b| Ground::numbered(n, b.clone()))).collect()
}

/// All valid `φᵒᵖ: M → L` in lexicographic order.
pub fn phi_ops(l: &Cqml, m: &Cqml) -> Vec<Vec<Elem>> {
    let (nl, nm) = (l.lattice().len(), m.lattice().len());
    let mut out = Vec::new();
    let mut cur = vec![Elem(0); nm];
    loop {
        if cur[m.lattice().top().index()] == l.lattice().top() && check_phi_op(l, m, &cur).is_ok() {
            out.push(cur.clone());
        }
        let mut k = nm;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if cur[k].index() + 1 < nl {
                cur[k] = Elem(cur[k].0 + 1);
                break;
            }
            cur[k] = Elem(0);
        }
    }
}

/// Every ground morphism `dom → cod`: all point maps times all valid `φᵒᵖ`.
pub fn morphisms(dom: &Ground, cod: &Ground) -> Vec<GroundMorphism> {
    let phis = phi_ops(dom.basis(), cod.basis());
    let (nx, ny) = (dom.len(), cod.len());
    let mut out = Vec::new();
    if ny == 0 && nx > 0 {
        return out;
    }
    let total = ny.pow(nx as u32);
    for code in 0..total {
        let map: Vec<usize> = (0..nx).map(|k| code / ny.pow(k as u32) % ny).collect();
        for phi in &phis {
            out.push(GroundMorphism::new_unchecked(dom.clone(), cod.clone(), map.clone(), phi.clone()));
        }
    }
    out
}

/// `log10` of the naive table count `|L|^(|X|·|L|^|X|)`.
pub fn operator_table_log10(ground: &Ground) -> f64 {
    let l = ground.lattice().len() as f64;
    ground.len() as f64 * l.powi(ground.len() as i32) * l.log10()
}

/// Streams every interior map on `ground` exactly once, building tables in
/// a linear extension of `L^X`: the value at `u` ranges over the interval
/// from the join of the values at `u`'s lower covers up to `u` itself, and
/// `1_X` is pinned. Every partial table extends, so there is no backtracking
/// on dead ends.
pub fn enumerate_interior_maps(ground: &Ground, bounds: &SearchBounds) -> Result<InteriorEnumerator, SearchError> {
    let est = operator_table_log10(ground);
    if est > bounds.max_operator_tables.log10() {
        return Err(SearchError::BoundsExceeded(format!(
            "about 10^{est:.1} candidate tables on {} points over {}",
            ground.len(),
            ground.basis().display_name()
        )));
    }
    let idx = ground.index().map_err(|e| SearchError::BoundsExceeded(e.to_string()))?.clone();
    Ok(InteriorEnumerator::new(ground.clone(), idx))
}

pub struct InteriorEnumerator {
    ground: Ground,
    idx: Arc<PowersetIndex>,
    candidates: Vec<Vec<Code>>,
    choice: Vec<usize>,
    table: Vec<Code>,
    started: bool,
    done: bool,
}

impl InteriorEnumerator {
    fn new(ground: Ground, idx: Arc<PowersetIndex>) -> Self {
        let n = idx.size();
        InteriorEnumerator {
            ground,
            idx,
            candidates: vec![Vec::new(); n],
            choice: vec![0; n],
            table: vec![0; n],
            started: false,
            done: false,
        }
    }

    fn fill(&mut self, from: usize) {
        let idx = Arc::clone(&self.idx);
        let l = self.ground.lattice();
        for p in from..idx.size() {
            let u = idx.linear_extension()[p];
            let cands = if u == idx.top() {
                vec![u]
            } else {
                let lo =
                    idx.lower_covers(u).iter().fold(idx.bottom(), |acc, &v| idx.join(l, acc, self.table[v as usize]));
                idx.interval(lo, u).collect()
            };
            self.table[u as usize] = cands[0];
            self.candidates[p] = cands;
            self.choice[p] = 0;
        }
    }
}

impl Iterator for InteriorEnumerator {
    type Item = InteriorMap;

    fn next(&mut self) -> Option<InteriorMap> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.fill(0);
            return Some(InteriorMap::new_unchecked(self.ground.clone(), self.table.clone()));
        }
        let mut p = self.idx.size();
        while p > 0 {
            p -= 1;
            self.choice[p] += 1;
            if self.choice[p] < self.candidates[p].len() {
                let u = self.idx.linear_extension()[p];
                self.table[u as usize] = self.candidates[p][self.choice[p]];
                self.fill(p + 1);
                return Some(InteriorMap::new_unchecked(self.ground.clone(), self.table.clone()));
            }
        }
        self.done = true;
        None
    }
}

/// Every interior map on a ground, collected.
pub fn all_interior_maps(ground: &Ground, bounds: &SearchBounds) -> Result<Vec<InteriorMap>, SearchError> {
    Ok(enumerate_interior_maps(ground, bounds)?.collect())
}
