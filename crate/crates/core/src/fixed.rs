//! Fixed-point formats and quantization.
//!
//! Words are two's-complement integers with `total_bits` bits, of which
//! `frac_bits` sit right of the binary point. Quantization rounds to the
//! nearest representable value with ties to even and refuses values outside
//! the representable range instead of wrapping. Intermediate products and
//! sums in the datapath use an accumulator twice as wide and saturate with
//! a flag on overflow.

use alloc::format;
use alloc::string::String;
use core::fmt;
use core::str::FromStr;

use crate::error::{Result, SplineError};

/// Widest supported word. Keeps double-width products inside `i128`.
pub const MAX_TOTAL_BITS: u32 = 32;

/// A fixed-point word format.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FixedPointFormat {
    total_bits: u32,
    frac_bits: u32,
    signed: bool,
}

impl FixedPointFormat {
    /// Builds a format with `total_bits` bits, `frac_bits` of them
    /// fractional.
    ///
    /// # Errors
    ///
    /// Domain error unless `1 <= total_bits <= 32` and
    /// `frac_bits < total_bits`.
    pub fn new(total_bits: u32, frac_bits: u32, signed: bool) -> Result<Self> {
        if total_bits == 0 || total_bits > MAX_TOTAL_BITS {
            return Err(SplineError::Domain(format!(
                "total_bits must be 1 ..= {MAX_TOTAL_BITS}, got {total_bits}"
            )));
        }
        if frac_bits >= total_bits {
            return Err(SplineError::Domain(format!(
                "frac_bits must be below total_bits, got {frac_bits}/{total_bits}"
            )));
        }
        Ok(FixedPointFormat {
            total_bits,
            frac_bits,
            signed,
        })
    }

    /// The default datapath format: signed, 16 bits, 14 fractional.
    pub fn q16_14() -> Self {
        FixedPointFormat {
            total_bits: 16,
            frac_bits: 14,
            signed: true,
        }
    }

    pub fn total_bits(&self) -> u32 {
        self.total_bits
    }

    pub fn frac_bits(&self) -> u32 {
        self.frac_bits
    }

    pub fn is_signed(&self) -> bool {
        self.signed
    }

    /// Scaling factor `2^frac_bits`.
    pub fn scale(&self) -> f64 {
        (1u64 << self.frac_bits) as f64
    }

    /// Smallest representable word.
    pub fn min_word(&self) -> i64 {
        if self.signed {
            -(1i64 << (self.total_bits - 1))
        } else {
            0
        }
    }

    /// Largest representable word.
    pub fn max_word(&self) -> i64 {
        if self.signed {
            (1i64 << (self.total_bits - 1)) - 1
        } else {
            (1i64 << self.total_bits) - 1
        }
    }

    /// Rounds `value` to the nearest representable word, ties to even.
    ///
    /// # Errors
    ///
    /// Range error when `value` is non-finite or the rounded word falls
    /// outside the representable range.
    pub fn quantize(&self, value: f64) -> Result<i64> {
        if !value.is_finite() {
            return Err(SplineError::Range(format!(
                "cannot quantize non-finite value {value}"
            )));
        }
        let scaled = value * self.scale();
        let word = round_ties_even(scaled);
        if word < self.min_word() as f64 || word > self.max_word() as f64 {
            return Err(SplineError::Range(format!(
                "value {value} maps to word {word}, outside {} ..= {} for format {self}",
                self.min_word(),
                self.max_word()
            )));
        }
        Ok(word as i64)
    }

    /// Real value of a word: `word / 2^frac_bits`.
    pub fn dequantize(&self, word: i64) -> f64 {
        word as f64 / self.scale()
    }

    /// Hex digits needed to print one word.
    pub fn hex_width(&self) -> usize {
        self.total_bits.div_ceil(4) as usize
    }

    /// Word reduced to its `total_bits`-wide two's-complement bit pattern.
    pub fn word_bits(&self, word: i64) -> u64 {
        let mask = if self.total_bits == 64 {
            u64::MAX
        } else {
            (1u64 << self.total_bits) - 1
        };
        (word as u64) & mask
    }
}

impl fmt::Display for FixedPointFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}:{}",
            self.total_bits,
            self.frac_bits,
            if self.signed { "s" } else { "u" }
        )
    }
}

impl FromStr for FixedPointFormat {
    type Err = SplineError;

    /// Parses `"T:F:s"` or `"T:F:u"`, for example `"16:14:s"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || SplineError::Domain(format!("bad format spec {s:?}, expected T:F:s or T:F:u"));
        let mut parts = s.split(':');
        let total: u32 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let frac: u32 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let signed = match parts.next().ok_or_else(bad)? {
            "s" => true,
            "u" => false,
            _ => return Err(bad()),
        };
        if parts.next().is_some() {
            return Err(bad());
        }
        FixedPointFormat::new(total, frac, signed)
    }
}

/// Rounds to the nearest integer with ties to even, as an `f64`.
fn round_ties_even(x: f64) -> f64 {
    let floor = libm::floor(x);
    let diff = x - floor;
    if diff > 0.5 {
        floor + 1.0
    } else if diff < 0.5 {
        floor
    } else if (floor as i64) % 2 == 0 {
        floor
    } else {
        floor + 1.0
    }
}

/// Arithmetic right shift by `s` with round-to-nearest, ties to even.
pub(crate) fn rshift_round_even(v: i128, s: u32) -> i128 {
    if s == 0 {
        return v;
    }
    let floor = v >> s;
    let rem = v - (floor << s);
    let half = 1i128 << (s - 1);
    if rem > half {
        floor + 1
    } else if rem < half {
        floor
    } else if floor & 1 == 0 {
        floor
    } else {
        floor + 1
    }
}

/// Clamps `v` to a `bits`-wide word, reporting whether clamping occurred.
pub(crate) fn saturate_to_bits(v: i128, bits: u32, signed: bool) -> (i128, bool) {
    let (lo, hi) = if signed {
        (-(1i128 << (bits - 1)), (1i128 << (bits - 1)) - 1)
    } else {
        (0, (1i128 << bits) - 1)
    };
    if v < lo {
        (lo, true)
    } else if v > hi {
        (hi, true)
    } else {
        (v, false)
    }
}

/// Description, for reports: representable interval of a format.
pub fn format_range_description(format: &FixedPointFormat) -> String {
    format!(
        "[{}, {}] step 2^-{}",
        format.dequantize(format.min_word()),
        format.dequantize(format.max_word()),
        format.frac_bits()
    )
}
