use bitvec::prelude::*;

use super::{Codeword, CodingError};

/// Elias-omega encoding of `n ≥ 1`.
///
/// Groups are emitted most significant first: the binary form of `n`,
/// preceded by the encoding of its length minus one, recursively, and a
/// terminating `0`.
pub fn omega_codeword(n: u64) -> Result<Codeword, CodingError> {
    if n == 0 {
        return Err(CodingError::ZeroArgument);
    }
    let mut groups: Vec<u64> = Vec::new();
    let mut value = n;
    while value > 1 {
        groups.push(value);
        value = u64::from(63 - value.leading_zeros());
    }
    let mut bits: BitVec<u8, Msb0> = BitVec::with_capacity(omega_length_raw(n));
    for &group in groups.iter().rev() {
        let width = 64 - group.leading_zeros() as usize;
        for shift in (0..width).rev() {
            bits.push((group >> shift) & 1 == 1);
        }
    }
    bits.push(false);
    Codeword::new(bits)
}

/// Length in bits of the omega codeword of `n`.
pub fn omega_length(n: u64) -> Result<usize, CodingError> {
    if n == 0 {
        return Err(CodingError::ZeroArgument);
    }
    Ok(omega_length_raw(n))
}

fn omega_length_raw(n: u64) -> usize {
    let mut len = 1;
    let mut value = n;
    while value > 1 {
        let width = 64 - value.leading_zeros() as usize;
        len += width;
        value = (width - 1) as u64;
    }
    len
}

/// Decodes one codeword starting at `start`; returns the value and the
/// position just past it.
pub fn omega_decode(bits: &BitSlice<u8, Msb0>, start: usize) -> Result<(u64, usize), CodingError> {
    let mut pos = start;
    let mut n: u64 = 1;
    loop {
        let lead = *bits.get(pos).ok_or(CodingError::TruncatedCodeword(pos))?;
        if !lead {
            return Ok((n, pos + 1));
        }
        if n >= 64 {
            return Err(CodingError::Overflow(pos));
        }
        let width = n as usize + 1;
        if pos + width > bits.len() {
            return Err(CodingError::TruncatedCodeword(bits.len()));
        }
        n = bits[pos..pos + width].load_be::<u64>();
        pos += width;
    }
}

/// Decodes a concatenation of omega codewords that fills `bits` exactly.
pub fn omega_decode_all(bits: &BitSlice<u8, Msb0>) -> Result<Vec<u64>, CodingError> {
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bits.len() {
        let (n, next) = omega_decode(bits, pos)?;
        out.push(n);
        pos = next;
    }
    Ok(out)
}
