//! Sums, extraction and inflation.

use super::{PermError, Permutation};

/// α ⊕ β: β shifted above and to the right of α.
pub fn direct_sum(alpha: &Permutation, beta: &Permutation) -> Permutation {
    let shift = alpha.len() as u16;
    let mut values = Vec::with_capacity(alpha.len() + beta.len());
    values.extend_from_slice(alpha.values());
    values.extend(beta.values().iter().map(|&v| v + shift));
    Permutation::from_vec_unchecked(values)
}

/// α ⊖ β: α shifted above and to the left of β.
pub fn skew_sum(alpha: &Permutation, beta: &Permutation) -> Permutation {
    let shift = beta.len() as u16;
    let mut values = Vec::with_capacity(alpha.len() + beta.len());
    values.extend(alpha.values().iter().map(|&v| v + shift));
    values.extend_from_slice(beta.values());
    Permutation::from_vec_unchecked(values)
}

/// α ⊖ᵢ β: the skew sum with the first `i` entries of β moved in front of α.
/// Only positions move; `i = 0` is the plain skew sum.
pub fn extraction(
    alpha: &Permutation,
    beta: &Permutation,
    i: usize,
) -> Result<Permutation, PermError> {
    let ell = beta.leading_maxima_count();
    if i > ell {
        return Err(PermError::Precondition(format!(
            "extraction index {i} exceeds the {ell} leading maxima of {beta:?}"
        )));
    }
    let shift = beta.len() as u16;
    let b = beta.values();
    let mut values = Vec::with_capacity(alpha.len() + beta.len());
    values.extend_from_slice(&b[..i]);
    values.extend(alpha.values().iter().map(|&v| v + shift));
    values.extend_from_slice(&b[i..]);
    Ok(Permutation::from_vec_unchecked(values))
}

/// σ[ρ⁽¹⁾, …, ρ⁽ᵏ⁾]: entry σ_j is replaced by a copy of ρ⁽ʲ⁾.
pub fn inflate(skeleton: &Permutation, blocks: &[Permutation]) -> Result<Permutation, PermError> {
    if blocks.len() != skeleton.len() {
        return Err(PermError::Precondition(format!(
            "{} blocks for a skeleton of length {}",
            blocks.len(),
            skeleton.len()
        )));
    }
    if let Some(j) = blocks.iter().position(Permutation::is_empty) {
        return Err(PermError::Precondition(format!("block {} is empty", j + 1)));
    }
    // offset[v] = total size of blocks whose skeleton value is below v
    let k = skeleton.len();
    let mut size_by_value = vec![0u16; k + 1];
    for (j, &v) in skeleton.values().iter().enumerate() {
        size_by_value[v as usize] = blocks[j].len() as u16;
    }
    let mut offset = vec![0u16; k + 1];
    for v in 2..=k {
        offset[v] = offset[v - 1] + size_by_value[v - 1];
    }
    let total: usize = blocks.iter().map(Permutation::len).sum();
    let mut values = Vec::with_capacity(total);
    for (j, &v) in skeleton.values().iter().enumerate() {
        let base = offset[v as usize];
        values.extend(blocks[j].values().iter().map(|&x| x + base));
    }
    Ok(Permutation::from_vec_unchecked(values))
}

impl Permutation {
    pub fn direct_sum(&self, other: &Permutation) -> Permutation {
        direct_sum(self, other)
    }

    pub fn skew_sum(&self, other: &Permutation) -> Permutation {
        skew_sum(self, other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::perm;

    #[test]
    fn sums() {
        assert_eq!(direct_sum(&perm("1"), &perm("1")), perm("12"));
        assert_eq!(skew_sum(&perm("1"), &perm("231")), perm("4231"));
        assert_eq!(direct_sum(&perm("12"), &perm("1")), perm("123"));
        assert_eq!(direct_sum(&Permutation::empty(), &perm("21")), perm("21"));
        assert_eq!(skew_sum(&perm("21"), &Permutation::empty()), perm("21"));
    }

    #[test]
    fn extraction_examples() {
        assert_eq!(
            extraction(&perm("1"), &perm("231"), 1).unwrap(),
            perm("2431")
        );
        assert_eq!(
            direct_sum(
                &extraction(&perm("1"), &perm("231"), 1).unwrap(),
                &perm("12")
            ),
            perm("243156")
        );
        assert_eq!(extraction(&perm("1"), &perm("12"), 1).unwrap(), perm("132"));
        assert_eq!(
            extraction(&perm("21"), &perm("312"), 0).unwrap(),
            skew_sum(&perm("21"), &perm("312"))
        );
        assert!(matches!(
            extraction(&perm("1"), &perm("231"), 3),
            Err(PermError::Precondition(_))
        ));
    }

    #[test]
    fn inflation_examples() {
        let blocks = [perm("123"), perm("1"), perm("12"), perm("123")];
        assert_eq!(inflate(&perm("3241"), &blocks).unwrap(), perm("567489123"));
        assert_eq!(
            inflate(&perm("12"), &[perm("1"), perm("1")]).unwrap(),
            perm("12")
        );
        assert_eq!(
            inflate(&perm("21"), &[perm("12"), perm("1")]).unwrap(),
            perm("231")
        );
        assert!(inflate(&perm("21"), &[perm("1")]).is_err());
        assert!(inflate(&perm("21"), &[perm("1"), Permutation::empty()]).is_err());
    }
}
