//! Local monoids `eM_ee` and the syntactic semigroup.

use serde::Serialize;

use super::{FiniteMonoid, Monoid, TableMonoid};
use crate::dfa::Dfa;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("element {0} is not idempotent")]
pub struct NotIdempotent(pub usize);

/// `M_e` (generated by the elements `J`-above `e`) and the local monoid
/// `eM_ee` with unit `e`.
#[derive(Debug, Clone, Serialize)]
pub struct LocalSubmonoid {
    pub e: usize,
    pub me_elements: Vec<usize>,
    pub local: TableMonoid,
}

impl LocalSubmonoid {
    pub fn new<M: Monoid>(m: &M, e: usize) -> Result<Self, NotIdempotent> {
        if !m.is_idempotent(e) {
            return Err(NotIdempotent(e));
        }
        let n = m.size();
        let above: Vec<usize> = (0..n).filter(|&x| m.j_leq(e, x)).collect();
        let me_elements = closure(m, &above, m.identity());
        let mut local: Vec<usize> = me_elements
            .iter()
            .map(|&x| m.mul(m.mul(e, x), e))
            .collect();
        local.sort_unstable();
        local.dedup();
        Ok(LocalSubmonoid {
            e,
            me_elements,
            local: TableMonoid::restrict(m, local, e),
        })
    }

    /// Parent ids of `eM_ee`.
    pub fn local_elements(&self) -> &[usize] {
        &self.local.parent_ids
    }
}

/// Smallest set containing `seed` and `gens`, closed under right
/// multiplication by `gens`. Sorted.
fn closure<M: Monoid>(m: &M, gens: &[usize], seed: usize) -> Vec<usize> {
    let mut seen = vec![false; m.size()];
    let mut out = vec![seed];
    seen[seed] = true;
    for &g in gens {
        if !seen[g] {
            seen[g] = true;
            out.push(g);
        }
    }
    let mut i = 0;
    while i < out.len() {
        let x = out[i];
        for &g in gens {
            let y = m.mul(x, g);
            if !seen[y] {
                seen[y] = true;
                out.push(y);
            }
        }
        i += 1;
    }
    out.sort_unstable();
    out
}

/// `M ∈ M_eDA`: every local monoid `eM_ee` is in **DA**.
pub fn is_in_me_da<M: Monoid>(m: &M) -> bool {
    m.idempotents()
        .into_iter()
        .all(|e| LocalSubmonoid::new(m, e).is_ok_and(|l| l.local.is_in_da()))
}

/// Images of nonempty words: the subsemigroup generated by the letters,
/// without adjoining the identity.
#[derive(Debug, Clone)]
pub struct SemigroupView<'m> {
    pub parent: &'m FiniteMonoid,
    pub elements: Vec<usize>,
}

impl<'m> SemigroupView<'m> {
    pub fn new(parent: &'m FiniteMonoid) -> Self {
        let gens = parent.letter_map().to_vec();
        let mut seen = vec![false; parent.size()];
        let mut elements = Vec::new();
        for &g in &gens {
            if !seen[g] {
                seen[g] = true;
                elements.push(g);
            }
        }
        let mut i = 0;
        while i < elements.len() {
            let x = elements[i];
            for &g in &gens {
                let y = parent.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    elements.push(y);
                }
            }
            i += 1;
        }
        elements.sort_unstable();
        SemigroupView { parent, elements }
    }

    pub fn idempotents(&self) -> Vec<usize> {
        self.elements
            .iter()
            .copied()
            .filter(|&x| self.parent.is_idempotent(x))
            .collect()
    }

    /// `eSe` as a monoid with unit `e`.
    pub fn local(&self, e: usize) -> Result<TableMonoid, NotIdempotent> {
        let p = self.parent;
        if !p.is_idempotent(e) {
            return Err(NotIdempotent(e));
        }
        let mut els: Vec<usize> = self
            .elements
            .iter()
            .map(|&s| p.mul(p.mul(e, s), e))
            .collect();
        els.sort_unstable();
        els.dedup();
        Ok(TableMonoid::restrict(p, els, e))
    }
}

/// Definability in FO²[<,+1]: for every idempotent `e` of the syntactic
/// semigroup, `eSe` is in **DA**.
pub fn fo2suc_definable(d: &Dfa) -> bool {
    let m = FiniteMonoid::syntactic(&d.minimize());
    semigroup_criterion(&m)
}

pub(crate) fn semigroup_criterion(m: &FiniteMonoid) -> bool {
    let s = SemigroupView::new(m);
    s.idempotents()
        .into_iter()
        .all(|e| s.local(e).is_ok_and(|l| l.is_in_da()))
}

impl FiniteMonoid {
    pub fn local_submonoid(&self, e: usize) -> Result<LocalSubmonoid, NotIdempotent> {
        LocalSubmonoid::new(self, e)
    }

    pub fn is_in_me_da(&self) -> bool {
        is_in_me_da(self)
    }
}
