//! The four-way basis ROM.
//!
//! The basis support `[-2, 2)` is split into four unit segments, one per
//! multiplier lane. Each ROM subsection holds `K` quantized basis values
//! sampled at the left endpoints of `K` equal subintervals of its segment:
//!
//! * `ROM1`, select code `0b00`, segment `[1, 2)`, feeds lane 0 (`b_(k-1)`)
//! * `ROM2`, select code `0b01`, segment `[0, 1)`, feeds lane 1 (`b_k`)
//! * `ROM3`, select code `0b10`, segment `[-1, 0)`, feeds lane 2 (`b_(k+1)`)
//! * `ROM4`, select code `0b11`, segment `[-2, -1)`, feeds lane 3 (`b_(k+2)`)
//!
//! One shared address counter drives all four subsections, so every output
//! sample reads exactly one word from each.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write as _;

use crate::basis::b3;
use crate::error::{Result, SplineError};
use crate::fixed::FixedPointFormat;

/// Number of ROM subsections and multiplier lanes.
pub const SUBSECTION_COUNT: usize = 4;

/// Left endpoint of each subsection's basis segment, by lane.
pub const SEGMENT_LEFT_ENDPOINTS: [f64; SUBSECTION_COUNT] = [1.0, 0.0, -1.0, -2.0];

/// Quantized basis tables for the four lanes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RomBank {
    format: FixedPointFormat,
    samples_per_segment: usize,
    words: [Vec<i64>; SUBSECTION_COUNT],
}

/// Builds the ROM bank for `samples_per_segment` phases per knot interval.
///
/// Subsection `j` holds `quantize(B3(left_j + p / K))` for
/// `p = 0 ..= K - 1`.
///
/// # Errors
///
/// Shape error when `samples_per_segment` is zero. Quantization cannot
/// overflow here; basis values stay within `[0, 2/3]`.
pub fn build_rom_bank(
    samples_per_segment: usize,
    format: FixedPointFormat,
) -> Result<RomBank> {
    if samples_per_segment == 0 {
        return Err(SplineError::Shape(
            "samples_per_segment must be at least 1".into(),
        ));
    }
    let k = samples_per_segment as f64;
    let mut words: [Vec<i64>; SUBSECTION_COUNT] = Default::default();
    for (j, table) in words.iter_mut().enumerate() {
        table.reserve(samples_per_segment);
        for p in 0..samples_per_segment {
            let x = SEGMENT_LEFT_ENDPOINTS[j] + p as f64 / k;
            let word = format
                .quantize(b3(x))
                .map_err(|e| e.prefixed(&format!("ROM{} entry {p}", j + 1)))?;
            table.push(word);
        }
    }
    Ok(RomBank {
        format,
        samples_per_segment,
        words,
    })
}

/// The 2-bit subsection select code for a multiplier lane.
///
/// # Errors
///
/// Domain error for lanes above 3.
pub fn subsection_address(lane: usize) -> Result<u8> {
    if lane >= SUBSECTION_COUNT {
        return Err(SplineError::Domain(format!(
            "lane must be 0 ..= 3, got {lane}"
        )));
    }
    Ok(lane as u8)
}

impl RomBank {
    /// Word format of the stored tables.
    pub fn format(&self) -> FixedPointFormat {
        self.format
    }

    /// Number of addresses per subsection.
    pub fn samples_per_segment(&self) -> usize {
        self.samples_per_segment
    }

    /// Word at `addr` in subsection `subsection` (0-based; subsection `j`
    /// is `ROM(j+1)`). Panics when either index is out of range.
    pub fn word(&self, subsection: usize, addr: usize) -> i64 {
        self.words[subsection][addr]
    }

    /// Dequantized value of a stored word.
    pub fn dequantized(&self, subsection: usize, addr: usize) -> f64 {
        self.format.dequantize(self.word(subsection, addr))
    }

    /// Basis argument a word was sampled at.
    pub fn sample_point(&self, subsection: usize, addr: usize) -> f64 {
        SEGMENT_LEFT_ENDPOINTS[subsection] + addr as f64 / self.samples_per_segment as f64
    }

    /// Renders the bank as a text image:
    /// a `#format total_bits frac_bits signed K` header, then four
    /// `#ROM1` .. `#ROM4` sections with one fixed-width lowercase-hex
    /// two's-complement word per line.
    pub fn render_image(&self) -> String {
        let mut out = String::new();
        let f = &self.format;
        let _ = writeln!(
            out,
            "#format {} {} {} {}",
            f.total_bits(),
            f.frac_bits(),
            if f.is_signed() { "s" } else { "u" },
            self.samples_per_segment
        );
        let width = f.hex_width();
        for (j, table) in self.words.iter().enumerate() {
            let _ = writeln!(out, "#ROM{}", j + 1);
            for &w in table {
                let _ = writeln!(out, "{:0width$x}", f.word_bits(w), width = width);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bank10() -> RomBank {
        build_rom_bank(10, FixedPointFormat::q16_14()).unwrap()
    }

    #[test]
    fn tables_match_frozen_words_for_k10_q16_14() {
        let bank = bank10();
        let expected: [[i64; 10]; 4] = [
            [2731, 1991, 1398, 937, 590, 341, 175, 74, 22, 3],
            [10923, 10767, 10333, 9669, 8826, 7851, 6794, 5704, 4631, 3624],
            [2731, 3624, 4631, 5704, 6794, 7851, 8826, 9669, 10333, 10767],
            [0, 3, 22, 74, 175, 341, 590, 937, 1398, 1991],
        ];
        for j in 0..4 {
            for p in 0..10 {
                assert_eq!(bank.word(j, p), expected[j][p], "ROM{} entry {p}", j + 1);
            }
        }
    }

    #[test]
    fn first_word_of_rom2_is_the_peak_value() {
        let bank = bank10();
        assert_eq!(bank.word(1, 0), 10923);
        assert_eq!(
            bank.word(1, 0),
            FixedPointFormat::q16_14().quantize(2.0 / 3.0).unwrap()
        );
    }

    #[test]
    fn mirrored_segments_share_words_exactly() {
        // B3 is even, so ROM3 is ROM2 read backwards (shifted one phase)
        // and ROM4 is ROM1 read backwards.
        for k in [1usize, 2, 7, 10, 32] {
            let bank = build_rom_bank(k, FixedPointFormat::q16_14()).unwrap();
            for p in 1..k {
                assert_eq!(bank.word(2, p), bank.word(1, k - p), "K = {k}, p = {p}");
                assert_eq!(bank.word(3, p), bank.word(0, k - p), "K = {k}, p = {p}");
            }
            assert_eq!(bank.word(2, 0), bank.word(0, 0), "K = {k}: B3(-1) = B3(1)");
            assert_eq!(bank.word(3, 0), 0, "K = {k}: B3(-2) = 0");
        }
    }

    #[test]
    fn dequantized_words_stay_within_segment_ranges() {
        // A stored word may exceed the exact branch maximum by at most half
        // a quantization step.
        let bank = bank10();
        let half_step = 0.5 / bank.format().scale();
        for p in 0..10 {
            for j in [1usize, 2] {
                let v = bank.dequantized(j, p);
                assert!((0.0..=2.0 / 3.0 + half_step).contains(&v), "ROM{} {p}", j + 1);
            }
            for j in [0usize, 3] {
                let v = bank.dequantized(j, p);
                assert!((0.0..=1.0 / 6.0 + half_step).contains(&v), "ROM{} {p}", j + 1);
            }
        }
    }

    #[test]
    fn single_sample_bank_holds_left_endpoint_values() {
        let bank = build_rom_bank(1, FixedPointFormat::q16_14()).unwrap();
        assert_eq!(bank.word(1, 0), 10923);
        assert_eq!(bank.word(0, 0), 2731);
        assert_eq!(bank.word(2, 0), 2731);
        assert_eq!(bank.word(3, 0), 0);
        assert!(matches!(
            build_rom_bank(0, FixedPointFormat::q16_14()),
            Err(SplineError::Shape(_))
        ));
    }

    #[test]
    fn select_codes_follow_the_lane_order() {
        assert_eq!(subsection_address(0).unwrap(), 0b00);
        assert_eq!(subsection_address(1).unwrap(), 0b01);
        assert_eq!(subsection_address(2).unwrap(), 0b10);
        assert_eq!(subsection_address(3).unwrap(), 0b11);
        assert!(matches!(
            subsection_address(4),
            Err(SplineError::Domain(_))
        ));
    }

    #[test]
    fn rendered_image_is_stable_for_a_small_bank() {
        let bank = build_rom_bank(2, FixedPointFormat::q16_14()).unwrap();
        let image = bank.render_image();
        let q = FixedPointFormat::q16_14();
        let w = |x: f64| q.quantize(crate::basis::b3(x)).unwrap();
        let expected = alloc::format!(
            "#format 16 14 s 2\n#ROM1\n{:04x}\n{:04x}\n#ROM2\n{:04x}\n{:04x}\n#ROM3\n{:04x}\n{:04x}\n#ROM4\n{:04x}\n{:04x}\n",
            w(1.0), w(1.5), w(0.0), w(0.5), w(-1.0), w(-0.5), w(-2.0), w(-1.5),
        );
        assert_eq!(image, expected);
        assert!(image.starts_with("#format 16 14 s 2\n#ROM1\n0aab\n0155\n#ROM2\n2aab\n"));
    }

    #[test]
    fn render_pads_words_to_the_format_width() {
        let bank = build_rom_bank(1, FixedPointFormat::new(20, 18, true).unwrap()).unwrap();
        let image = bank.render_image();
        for line in image.lines().filter(|l| !l.starts_with('#')) {
            assert_eq!(line.len(), 5, "line {line:?}");
        }
    }
}
