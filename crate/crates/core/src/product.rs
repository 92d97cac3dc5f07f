//! Direct products of heterogeneous families through type erasure, and the
//! componentwise combination of Z-conjugate witnesses.

use std::any::Any;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{GeneratorSet, Group, Witness, WitnessMode};
use crate::verify::verify_czc;

trait DynValue: Any + fmt::Debug + Send + Sync {
    fn as_any(&self) -> &dyn Any;
}

impl<T: Any + fmt::Debug + Send + Sync> DynValue for T {
    fn as_any(&self) -> &dyn Any {
        self
    }
}

/// An element of some family, with its type erased.
#[derive(Clone)]
pub struct DynElement(Arc<dyn DynValue>);

impl DynElement {
    pub fn new<E: Any + fmt::Debug + Send + Sync>(e: E) -> Self {
        Self(Arc::new(e))
    }

    pub fn downcast<E: Any>(&self) -> Option<&E> {
        (*self.0).as_any().downcast_ref()
    }
}

impl fmt::Debug for DynElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Object-safe mirror of [`Group`].
pub trait DynGroup: fmt::Debug + Send + Sync {
    fn name(&self) -> String;
    fn identity(&self) -> DynElement;
    fn multiply(&self, a: &DynElement, b: &DynElement) -> DynElement;
    fn inverse(&self, a: &DynElement) -> DynElement;
    fn equals(&self, a: &DynElement, b: &DynElement) -> bool;
    fn render(&self, a: &DynElement) -> String;
    fn check_member(&self, a: &DynElement) -> Result<()>;
}

/// A typed family behind [`DynGroup`].
#[derive(Debug, Clone)]
pub struct Erased<G>(pub G);

impl<G> Erased<G>
where
    G: Group,
    G::Element: Any + Send + Sync,
{
    fn get<'a>(&self, a: &'a DynElement) -> &'a G::Element {
        a.downcast().unwrap_or_else(|| panic!("element {a:?} does not belong to {}", self.0.name()))
    }
}

impl<G> DynGroup for Erased<G>
where
    G: Group + fmt::Debug + Send + Sync,
    G::Element: Any + Send + Sync,
{
    fn name(&self) -> String {
        self.0.name()
    }
    fn identity(&self) -> DynElement {
        DynElement::new(self.0.identity())
    }
    fn multiply(&self, a: &DynElement, b: &DynElement) -> DynElement {
        DynElement::new(self.0.multiply(self.get(a), self.get(b)))
    }
    fn inverse(&self, a: &DynElement) -> DynElement {
        DynElement::new(self.0.inverse(self.get(a)))
    }
    fn equals(&self, a: &DynElement, b: &DynElement) -> bool {
        self.0.equals(self.get(a), self.get(b))
    }
    fn render(&self, a: &DynElement) -> String {
        self.0.render(self.get(a))
    }
    fn check_member(&self, a: &DynElement) -> Result<()> {
        match a.downcast::<G::Element>() {
            Some(e) => self.0.check_member(e),
            None => Err(Error::FamilyMismatch { expected: self.0.name(), reason: format!("element of another type: {a:?}") }),
        }
    }
}

pub fn erase<G>(group: G) -> Arc<dyn DynGroup>
where
    G: Group + fmt::Debug + Send + Sync + 'static,
    G::Element: Any + Send + Sync,
{
    Arc::new(Erased(group))
}

impl Group for Arc<dyn DynGroup> {
    type Element = DynElement;

    fn name(&self) -> String {
        DynGroup::name(self.as_ref())
    }
    fn identity(&self) -> DynElement {
        DynGroup::identity(self.as_ref())
    }
    fn multiply(&self, a: &DynElement, b: &DynElement) -> DynElement {
        DynGroup::multiply(self.as_ref(), a, b)
    }
    fn inverse(&self, a: &DynElement) -> DynElement {
        DynGroup::inverse(self.as_ref(), a)
    }
    fn equals(&self, a: &DynElement, b: &DynElement) -> bool {
        DynGroup::equals(self.as_ref(), a, b)
    }
    fn render(&self, a: &DynElement) -> String {
        DynGroup::render(self.as_ref(), a)
    }
    fn check_member(&self, a: &DynElement) -> Result<()> {
        DynGroup::check_member(self.as_ref(), a)
    }
}

/// `Γ_1 × ⋯ × Γ_k` over erased factors.
#[derive(Debug, Clone)]
pub struct ProductGroup {
    pub factors: Vec<Arc<dyn DynGroup>>,
}

impl Group for ProductGroup {
    type Element = Vec<DynElement>;

    fn name(&self) -> String {
        let names: Vec<String> = self.factors.iter().map(|g| g.name()).collect();
        names.join(" x ")
    }
    fn identity(&self) -> Vec<DynElement> {
        self.factors.iter().map(|g| g.identity()).collect()
    }
    fn multiply(&self, a: &Vec<DynElement>, b: &Vec<DynElement>) -> Vec<DynElement> {
        self.factors.iter().zip(a.iter().zip(b)).map(|(g, (x, y))| g.multiply(x, y)).collect()
    }
    fn inverse(&self, a: &Vec<DynElement>) -> Vec<DynElement> {
        self.factors.iter().zip(a).map(|(g, x)| g.inverse(x)).collect()
    }
    fn equals(&self, a: &Vec<DynElement>, b: &Vec<DynElement>) -> bool {
        self.factors.iter().zip(a.iter().zip(b)).all(|(g, (x, y))| g.equals(x, y))
    }
    fn render(&self, a: &Vec<DynElement>) -> String {
        let parts: Vec<String> = self.factors.iter().zip(a).map(|(g, x)| g.render(x)).collect();
        format!("<{}>", parts.join("; "))
    }
    fn check_member(&self, a: &Vec<DynElement>) -> Result<()> {
        if a.len() != self.factors.len() {
            return Err(Error::FamilyMismatch {
                expected: self.name(),
                reason: format!("tuple of length {}, expected {}", a.len(), self.factors.len()),
            });
        }
        self.factors.iter().zip(a).try_for_each(|(g, x)| g.check_member(x))
    }
}

/// One coordinate of a product: a family with its own `(H_i, t_i)`.
#[derive(Debug, Clone)]
pub struct ProductFactor {
    pub group: Arc<dyn DynGroup>,
    pub h: GeneratorSet<DynElement>,
    pub witness: Witness<DynElement>,
}

impl ProductFactor {
    pub fn new<G>(group: G, h: GeneratorSet<G::Element>, witness: Witness<G::Element>) -> Self
    where
        G: Group + fmt::Debug + Send + Sync + 'static,
        G::Element: Any + Send + Sync,
    {
        let family = h.family.clone();
        Self {
            group: erase(group),
            h: GeneratorSet { family, elements: h.elements.into_iter().map(DynElement::new).collect() },
            witness: witness.map(DynElement::new),
        }
    }
}

pub type CombinedWitness = (ProductGroup, GeneratorSet<Vec<DynElement>>, Witness<Vec<DynElement>>);

/// `H = ∏ H_i` with `t = (t_i)`, after re-verifying each factor at the
/// common bound.
pub fn combine_product_witnesses(factors: Vec<ProductFactor>) -> Result<CombinedWitness> {
    let first = factors.first().ok_or_else(|| Error::Precondition("no factors to combine".into()))?;
    let WitnessMode::Bounded(bound) = first.witness.mode else {
        return Err(Error::InvalidWitness("product witnesses combine Z-mode witnesses only".into()));
    };
    for (i, f) in factors.iter().enumerate() {
        if f.witness.mode != WitnessMode::Bounded(bound) {
            return Err(Error::InvalidWitness(format!(
                "factor {} has mode {:?}, expected bounded P = {bound}",
                i + 1,
                f.witness.mode
            )));
        }
        let report = verify_czc(&f.group, &f.h, &f.witness)?;
        if let Some(c) = report.counterexample() {
            return Err(Error::InvalidWitness(format!("factor {} fails: {c}", i + 1)));
        }
    }
    let group = ProductGroup { factors: factors.iter().map(|f| f.group.clone()).collect() };
    let identity = group.identity();
    let mut elements = Vec::new();
    for (i, f) in factors.iter().enumerate() {
        for h in &f.h.elements {
            let mut tuple = identity.clone();
            tuple[i] = h.clone();
            elements.push(tuple);
        }
    }
    let h = GeneratorSet::new(&group, elements)?;
    let t = factors.iter().map(|f| f.witness.t.clone()).collect();
    Ok((group, h, Witness::bounded(t, bound)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iet::{int, rational, IetGroup, IetMap};
    use crate::pl::{displacement_witness, PlGroup, PlMap};

    fn iet_factor(offset: i64, bound: u32) -> ProductFactor {
        let g = IetGroup;
        let rot = IetMap::rotation(&int(1), &rational(1, 3)).unwrap().shifted(&int(offset)).unwrap();
        let h = GeneratorSet::new(&g, vec![rot]).unwrap();
        let t = IetMap::block_cycle(&int(offset + 1), 4).unwrap();
        ProductFactor::new(g, h, Witness::bounded(t, bound).unwrap())
    }

    fn pl_factor(bound: u32) -> ProductFactor {
        let g = PlGroup;
        let bump = PlMap::bump(&rational(1, 4), &rational(1, 2), &rational(5, 16), &rational(3, 8)).unwrap();
        let h = GeneratorSet::new(&g, vec![bump]).unwrap();
        ProductFactor::new(g, h, displacement_witness(&rational(1, 4), &rational(1, 2), bound).unwrap())
    }

    #[test]
    fn single_pair_is_a_one_tuple() {
        let (g, h, w) = combine_product_witnesses(vec![iet_factor(0, 3)]).unwrap();
        assert_eq!(g.factors.len(), 1);
        assert_eq!(h.len(), 1);
        assert_eq!(w.t.len(), 1);
        assert!(verify_czc(&g, &h, &w).unwrap().passed());
    }

    #[test]
    fn two_iet_pairs() {
        let (g, h, w) = combine_product_witnesses(vec![iet_factor(0, 3), iet_factor(1, 3)]).unwrap();
        let r = verify_czc(&g, &h, &w).unwrap();
        assert!(r.passed() && r.bounded);
        assert_eq!(h.len(), 2);
    }

    #[test]
    fn heterogeneous_iet_and_pl() {
        let (g, h, w) = combine_product_witnesses(vec![iet_factor(0, 4), pl_factor(4)]).unwrap();
        assert!(verify_czc(&g, &h, &w).unwrap().passed());
        assert!(g.name().contains("IET") && g.name().contains("PL"));
        assert!(w.t[1].downcast::<PlMap>().is_some());
    }

    #[test]
    fn errors() {
        assert!(combine_product_witnesses(vec![]).is_err());
        assert!(combine_product_witnesses(vec![iet_factor(0, 3), pl_factor(4)]).is_err());
        // t = identity cannot displace a non-trivial H
        let g = IetGroup;
        let h = GeneratorSet::new(
            &g,
            vec![IetMap::rotation(&int(1), &rational(1, 3)).unwrap(), IetMap::block_exchange(&int(1)).unwrap()],
        )
        .unwrap();
        let bad = ProductFactor::new(g, h, Witness::bounded(IetMap::identity(), 2).unwrap());
        assert!(combine_product_witnesses(vec![bad]).is_err());
    }

    #[test]
    fn erased_membership_is_typed() {
        let g = erase(IetGroup);
        assert!(g.check_member(&DynElement::new(IetMap::identity())).is_ok());
        assert!(matches!(g.check_member(&DynElement::new(crate::perm::FinPerm::identity())), Err(Error::FamilyMismatch { .. })));
    }
}
