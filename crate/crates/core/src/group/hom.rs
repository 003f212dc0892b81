use super::{Elem, FiniteGroup, Subgroup};

/// A map between groups given by its table of images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    map: Vec<Elem>,
    target_order: usize,
}

impl GroupHom {
    pub fn new(map: Vec<Elem>, target_order: usize) -> Self {
        GroupHom { map, target_order }
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x]
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    pub fn target_order(&self) -> usize {
        self.target_order
    }

    pub fn is_homomorphism(&self, source: &FiniteGroup, target: &FiniteGroup) -> bool {
        source.elements().all(|x| {
            source
                .elements()
                .all(|y| self.apply(source.mul(x, y)) == target.mul(self.apply(x), self.apply(y)))
        })
    }

    pub fn kernel(&self, source: &FiniteGroup, target: &FiniteGroup) -> Subgroup {
        let e = target.identity();
        let members = source.elements().filter(|&x| self.apply(x) == e).collect();
        Subgroup::from_members_unchecked(source.order(), members)
    }

    /// Full preimage of a subgroup of the target.
    pub fn preimage(&self, source: &FiniteGroup, s: &Subgroup) -> Subgroup {
        let members = source
            .elements()
            .filter(|&x| s.contains(self.apply(x)))
            .collect();
        Subgroup::from_members_unchecked(source.order(), members)
    }

    /// Image of a subgroup of the source.
    pub fn image(&self, target: &FiniteGroup, s: &Subgroup) -> Subgroup {
        let members = s.members().iter().map(|&x| self.apply(x)).collect();
        Subgroup::from_members_unchecked(target.order(), members)
    }

    /// Smallest source id mapping to each target element (`None` off the image).
    pub fn min_preimages(&self) -> Vec<Option<Elem>> {
        let mut lifts = vec![None; self.target_order];
        for (x, &y) in self.map.iter().enumerate() {
            lifts[y].get_or_insert(x);
        }
        lifts
    }
}
