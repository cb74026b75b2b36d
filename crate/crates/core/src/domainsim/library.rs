use std::collections::HashSet;

use bitvec::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Bits, DomainSpec, SimError};
use crate::infocode::{omega_codeword, Codebook, Codeword};

/// Rejections tolerated while drawing distinct bodies.
pub const MAX_BODY_REJECTIONS: usize = 1000;

#[derive(Debug, Clone, PartialEq)]
pub struct Component {
    pub rank: usize,
    pub body: Bits,
    pub codeword: Codeword,
}

impl Component {
    pub fn body_size_bits(&self) -> usize {
        self.body.len()
    }
}

/// A rank-ordered prefix of the component library.
///
/// Rank order follows the Zipf weights, so reuse rates are nonincreasing
/// in rank; identifiers are Elias-omega codewords of the ranks.
#[derive(Debug, Clone, PartialEq)]
pub struct Library {
    components: Vec<Component>,
    weights: Vec<f64>,
    codebook: Codebook,
}

pub(crate) fn random_bits<R: Rng>(rng: &mut R, len: usize, out: &mut Bits) {
    let mut remaining = len;
    while remaining > 0 {
        let take = remaining.min(64);
        let word: u64 = rng.random();
        out.extend_from_bitslice(&word.view_bits::<Msb0>()[..take]);
        remaining -= take;
    }
}

impl Library {
    pub fn build(spec: &DomainSpec) -> Result<Self, SimError> {
        spec.validate()?;
        // Bodies of one size must fit in the 2^size distinct strings.
        let mut per_size = std::collections::BTreeMap::<u32, usize>::new();
        for rank in 1..=spec.alphabet_size {
            *per_size.entry(spec.body_size(rank)).or_default() += 1;
        }
        for (&size, &count) in &per_size {
            if size < 64 && (count as u128) > (1u128 << size) {
                return Err(SimError::Config(format!(
                    "{count} components cannot have distinct {size}-bit bodies"
                )));
            }
        }

        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
        let mut seen: HashSet<Bits> = HashSet::with_capacity(spec.alphabet_size);
        let mut rejections = 0;
        let mut components = Vec::with_capacity(spec.alphabet_size);
        for rank in 1..=spec.alphabet_size {
            let size = spec.body_size(rank) as usize;
            let body = loop {
                let mut body = Bits::with_capacity(size);
                random_bits(&mut rng, size, &mut body);
                if seen.insert(body.clone()) {
                    break body;
                }
                rejections += 1;
                if rejections >= MAX_BODY_REJECTIONS {
                    return Err(SimError::BodiesNotDistinct {
                        alphabet_size: spec.alphabet_size,
                        rejections,
                    });
                }
            };
            let codeword = omega_codeword(rank as u64).expect("rank is positive");
            components.push(Component {
                rank,
                body,
                codeword,
            });
        }
        let codebook = Codebook::new(components.iter().map(|c| c.codeword.clone()).collect())
            .expect("omega codewords form a valid codebook");
        Ok(Self {
            components,
            weights: spec.zipf_weights(),
            codebook,
        })
    }

    /// The first `len` ranks.
    pub fn prefix(&self, len: usize) -> Library {
        let len = len.min(self.components.len());
        Library {
            components: self.components[..len].to_vec(),
            weights: self.weights[..len].to_vec(),
            codebook: self.codebook.truncated(len),
        }
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component(&self, rank: usize) -> Option<&Component> {
        rank.checked_sub(1).and_then(|i| self.components.get(i))
    }

    /// Unnormalized draw weights by rank.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn codebook(&self) -> &Codebook {
        &self.codebook
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    #[cfg(test)]
    pub(crate) fn set_components_for_test(&mut self, components: Vec<Component>) {
        self.components = components;
    }

    pub fn max_body_size(&self) -> usize {
        self.components
            .iter()
            .map(Component::body_size_bits)
            .max()
            .unwrap_or(0)
    }
}
