//! Seeded sampling of group elements and class-component generators.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chain::Tuple;
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupModel};
use crate::metric::WordMetric;

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream for sub-task `index` of a seeded run.
pub fn substream(seed: u64, index: u64) -> SampleRng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(index + 1);
    r
}

/// Uniform elements: the whole group when finite, else the ball of radius `radius`.
#[derive(Clone, Debug)]
pub struct ElementPool {
    model: GroupModel,
    elements: Vec<GroupElement>,
}

impl ElementPool {
    pub fn new(model: &GroupModel, radius: usize) -> Result<Self> {
        let elements = match model.elements() {
            Some(e) => e.to_vec(),
            None => WordMetric::new(model).ball(radius)?,
        };
        Ok(Self {
            model: model.clone(),
            elements,
        })
    }

    pub fn model(&self) -> &GroupModel {
        &self.model
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn draw<R: Rng>(&self, rng: &mut R) -> GroupElement {
        self.elements.choose(rng).expect("nonempty pool").clone()
    }

    pub fn tuple<R: Rng>(&self, rng: &mut R, len: usize) -> Tuple {
        (0..len).map(|_| self.draw(rng)).collect()
    }

    /// A tuple `(g₀, …, g_n)` with `g₀ ⋯ g_n = r⁻¹ h r`; all entries but the
    /// last, and `r`, come from the pool.
    pub fn class_tuple<R: Rng>(&self, rng: &mut R, h: &GroupElement, n: usize) -> Tuple {
        let m = &self.model;
        let mut t = self.tuple(rng, n);
        let r = self.draw(rng);
        let target = m.conjugate(h, &r);
        t.push(m.mul(&m.inv(&m.product(&t)), &target));
        t
    }

    /// As [`Self::class_tuple`], but forcing the cyclic last term of the
    /// boundary to need a different conjugator: the last entry does not
    /// commute with the product.
    pub fn cyclic_class_tuple<R: Rng>(
        &self,
        rng: &mut R,
        h: &GroupElement,
        n: usize,
        attempts: usize,
    ) -> Result<Tuple> {
        let m = &self.model;
        for _ in 0..attempts {
            let t = self.class_tuple(rng, h, n);
            if !m.commute(&t[n], &m.product(&t)) {
                return Ok(t);
            }
        }
        Err(Error::Resource(format!(
            "no tuple with a non-commuting last entry after {attempts} attempts"
        )))
    }
}
