use super::{ArrangementSpec, FiberData};
use crate::error::{Error, Result};

impl ArrangementSpec {
    /// Pull-back by the `r`-th power of the Frobenius of the base curve.
    /// Every contact order and the degree are multiplied by `p^r`.
    pub fn frobenius_pullback(&self, r: u32) -> Result<Self> {
        let p = self.char_p.ok_or(Error::CharacteristicUnset)?;
        let factor = p.pow(r);
        Ok(ArrangementSpec {
            label: if r == 0 {
                self.label.clone()
            } else {
                format!("{} (Frobenius^{r})", self.label)
            },
            degree: self.degree * factor,
            fibers: self
                .fibers
                .iter()
                .map(|f| FiberData::new(f.points.iter().map(|pt| pt.map_contacts(|c| c * factor)).collect()))
                .collect(),
            ..self.clone()
        })
    }

    /// Pull-back along an unramified cover of degree `n` of the base curve.
    /// Each singular fiber has `n` preimages.
    pub fn etale_pullback(&self, n: u64) -> Result<Self> {
        if self.genus == 0 {
            return Err(Error::RationalBase);
        }
        assert!(n >= 1, "cover degree must be positive");
        let mut fibers = Vec::with_capacity(self.fibers.len() * n as usize);
        for _ in 0..n {
            fibers.extend(self.fibers.iter().cloned());
        }
        Ok(ArrangementSpec {
            label: if n == 1 {
                self.label.clone()
            } else {
                format!("{} (etale degree {n})", self.label)
            },
            genus: n * (self.genus - 1) + 1,
            degree: self.degree * n,
            fibers,
            ..self.clone()
        })
    }
}
