use std::collections::HashMap;

use super::factor::roots_in_field;
use super::field::Field;
use super::poly::UniPoly;
use super::table::Gf;
use crate::error::{Error, Result};

/// Field embedding GF(p^k) -> GF(p^K), k | K, sending the defining root of
/// the source to the least root (by coordinates) of its modulus in the target.
#[derive(Clone, Debug)]
pub struct GfEmbedding {
    src: Gf,
    dst: Gf,
    image: Vec<u32>,
    preimage: HashMap<u32, u32>,
}

impl GfEmbedding {
    pub fn new(src: &Gf, dst: &Gf) -> Result<Self> {
        if src.p() != dst.p() || !dst.k().is_multiple_of(src.k()) {
            return Err(Error::NoEmbedding(format!("{src:?} into {dst:?}")));
        }
        let m = UniPoly::from_coeffs(
            dst,
            src.modulus()
                .iter()
                .map(|&c| dst.from_int(c as i64))
                .collect(),
        );
        let theta = *roots_in_field(dst, &m, 0)
            .first()
            .ok_or_else(|| Error::NoEmbedding("modulus has no root in target".into()))?;
        let powers: Vec<u32> = (0..src.k()).map(|j| dst.pow(&theta, j as u64)).collect();
        let mut image = vec![0u32; src.size() as usize];
        let mut preimage = HashMap::with_capacity(src.size() as usize);
        for a in src.elements() {
            let b = src
                .coords(&a)
                .iter()
                .zip(&powers)
                .fold(0u32, |acc, (&c, t)| {
                    dst.add(&acc, &dst.mul(&dst.from_int(c as i64), t))
                });
            image[a as usize] = b;
            preimage.insert(b, a);
        }
        Ok(GfEmbedding {
            src: src.clone(),
            dst: dst.clone(),
            image,
            preimage,
        })
    }

    pub fn src(&self) -> &Gf {
        &self.src
    }

    pub fn dst(&self) -> &Gf {
        &self.dst
    }

    #[inline]
    pub fn apply(&self, a: u32) -> u32 {
        self.image[a as usize]
    }

    /// The source element mapping to `b`, if `b` is in the image.
    pub fn preimage(&self, b: u32) -> Option<u32> {
        self.preimage.get(&b).copied()
    }
}
