//! Cycle-level model of the parallel evaluation structure.
//!
//! Coefficients stream through a four-stage shift register. On every output
//! cycle the four multiplier lanes each combine one register stage with one
//! word from their ROM subsection at a shared phase address, and the
//! summator reduces the four products to a single output word. When the
//! phase address wraps, the register shifts left and the next coefficient
//! loads into the last stage.
//!
//! With coefficients `b_(-1) .. b_n`, segment `m` (the stretch between two
//! consecutive loads) holds `b_(m-4) .. b_(m-1)` in the register, so its
//! outputs cover the knot interval starting at `a + (m - 3) h`. The first
//! three segments precede the interval of interest and their outputs are
//! marked transient; the run drains after segment `n + 1`, giving
//! `(n + 2) K` outputs for `K` phases per segment.
//!
//! Arithmetic is exact in wide intermediates. The summator result is
//! rounded back to the word format (ties to even) and saturated, never
//! wrapped; saturation is flagged on the affected sample.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::Result;
use crate::extend::{extend_signal, ExtensionRule, EXTENSION_MARGIN};
use crate::fixed::{rshift_round_even, saturate_to_bits, FixedPointFormat};
use crate::grid::{CoefficientVector, SampledSignal, UniformGrid};
use crate::rom::{RomBank, SUBSECTION_COUNT};
use crate::spline::compute_coefficients;

/// Segments whose outputs precede the approximation interval.
pub const TRANSIENT_SEGMENTS: usize = 3;

/// Cycle prices of the datapath stages.
///
/// The four multipliers run in parallel, so a sample costs one multiply
/// price plus one summator price regardless of lane count. The shift price
/// is paid once per address wrap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CycleCosts {
    pub multiply: u64,
    pub summator: u64,
    pub shift: u64,
}

impl Default for CycleCosts {
    fn default() -> Self {
        CycleCosts {
            multiply: 1,
            summator: 1,
            shift: 0,
        }
    }
}

impl CycleCosts {
    /// Cycles charged for every output sample.
    pub fn per_sample(&self) -> u64 {
        self.multiply + self.summator
    }
}

/// Immutable structure of a simulation run.
#[derive(Debug, Clone)]
pub struct DatapathConfig {
    pub rom: RomBank,
    pub extension_rule: ExtensionRule,
    pub cycle_costs: CycleCosts,
}

impl DatapathConfig {
    /// Config with the default extension rule and cycle prices.
    pub fn new(rom: RomBank) -> Self {
        DatapathConfig {
            rom,
            extension_rule: ExtensionRule::default(),
            cycle_costs: CycleCosts::default(),
        }
    }
}

/// One produced output word.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutputSample {
    /// Ordinal of the sample in the run, from zero.
    pub index: usize,
    /// Abscissa the word approximates the signal at.
    pub x: f64,
    /// Output word in the run's fixed-point format.
    pub word: i64,
    /// Dequantized value of `word`.
    pub value: f64,
    /// Whether the sample belongs to the startup transient.
    pub transient: bool,
    /// Whether the summator result was clipped to the format range.
    pub saturated: bool,
}

/// Result of advancing the datapath by one output cycle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepOutcome {
    /// A sample was produced.
    Produced(OutputSample),
    /// The coefficient stream is exhausted; no further samples.
    Drained,
}

/// Mutable registers of the datapath.
#[derive(Debug, Clone)]
pub struct DatapathState {
    grid: UniformGrid,
    format: FixedPointFormat,
    stream: Vec<i64>,
    next: usize,
    shift_register: [i64; SUBSECTION_COUNT],
    addr: usize,
    segment: usize,
    samples_produced: usize,
    cycles: u64,
    rom_reads: u64,
    saturation_events: u64,
    ended: bool,
}

impl DatapathState {
    /// Quantizes the coefficient stream and presets the registers: the
    /// phase address at zero and the first coefficient in the last
    /// register stage, the other stages cleared.
    ///
    /// # Errors
    ///
    /// Range error naming the offending coefficient index when a
    /// coefficient does not fit the word format.
    pub fn preset(coeffs: &CoefficientVector, format: FixedPointFormat) -> Result<Self> {
        let mut stream = Vec::with_capacity(coeffs.len());
        for (pos, &c) in coeffs.as_slice().iter().enumerate() {
            let index = pos as isize - 1;
            let word = format
                .quantize(c)
                .map_err(|e| e.prefixed(&format!("coefficient {index}")))?;
            stream.push(word);
        }
        let mut shift_register = [0i64; SUBSECTION_COUNT];
        shift_register[SUBSECTION_COUNT - 1] = stream[0];
        Ok(DatapathState {
            grid: *coeffs.grid(),
            format,
            stream,
            next: 1,
            shift_register,
            addr: 0,
            segment: 0,
            samples_produced: 0,
            cycles: 0,
            rom_reads: 0,
            saturation_events: 0,
            ended: false,
        })
    }

    /// Advances by one output cycle: reads the four ROM words at the
    /// current phase, multiplies them into the register stages, reduces
    /// through the summator, and handles the address wrap.
    ///
    /// Panics when the ROM format differs from the preset format.
    pub fn step_cycle(&mut self, config: &DatapathConfig) -> StepOutcome {
        assert!(
            config.rom.format() == self.format,
            "ROM format {} does not match preset format {}",
            config.rom.format(),
            self.format
        );
        if self.ended {
            return StepOutcome::Drained;
        }
        let k = config.rom.samples_per_segment();

        let mut acc: i128 = 0;
        for lane in 0..SUBSECTION_COUNT {
            let coeff = self.shift_register[lane] as i128;
            let word = config.rom.word(lane, self.addr) as i128;
            acc += coeff * word;
        }
        self.rom_reads += SUBSECTION_COUNT as u64;

        let shifted = rshift_round_even(acc, self.format.frac_bits());
        let (clipped, saturated) = saturate_to_bits(
            shifted,
            self.format.total_bits(),
            self.format.is_signed(),
        );
        let word = clipped as i64;
        if saturated {
            self.saturation_events += 1;
        }

        let x = self.grid.a()
            + (self.segment as f64 - TRANSIENT_SEGMENTS as f64 + self.addr as f64 / k as f64)
                * self.grid.h();
        let sample = OutputSample {
            index: self.samples_produced,
            x,
            word,
            value: self.format.dequantize(word),
            transient: self.segment < TRANSIENT_SEGMENTS,
            saturated,
        };

        self.cycles += config.cycle_costs.per_sample();
        self.samples_produced += 1;
        self.addr += 1;
        if self.addr == k {
            self.addr = 0;
            self.cycles += config.cycle_costs.shift;
            if self.next < self.stream.len() {
                self.shift_register.rotate_left(1);
                self.shift_register[SUBSECTION_COUNT - 1] = self.stream[self.next];
                self.next += 1;
                self.segment += 1;
            } else {
                self.ended = true;
            }
        }
        StepOutcome::Produced(sample)
    }

    /// Current register stages, oldest coefficient first.
    pub fn shift_register(&self) -> [i64; SUBSECTION_COUNT] {
        self.shift_register
    }

    /// Index of the segment currently producing outputs.
    pub fn segment(&self) -> usize {
        self.segment
    }

    /// Current phase address.
    pub fn addr(&self) -> usize {
        self.addr
    }

    /// Cycles accumulated so far.
    pub fn cycles(&self) -> u64 {
        self.cycles
    }

    /// ROM words read so far.
    pub fn rom_reads(&self) -> u64 {
        self.rom_reads
    }

    /// Samples clipped to the format range so far.
    pub fn saturation_events(&self) -> u64 {
        self.saturation_events
    }

    /// Samples produced so far.
    pub fn samples_produced(&self) -> usize {
        self.samples_produced
    }

    /// Whether the coefficient stream is exhausted.
    pub fn is_drained(&self) -> bool {
        self.ended
    }
}

/// All samples of a completed run.
#[derive(Debug, Clone)]
pub struct SimulationTrace {
    format: FixedPointFormat,
    samples_per_segment: usize,
    samples: Vec<OutputSample>,
    saturation_events: u64,
    rom_reads: u64,
}

impl SimulationTrace {
    /// Word format of the run.
    pub fn format(&self) -> FixedPointFormat {
        self.format
    }

    /// Phases per segment of the run.
    pub fn samples_per_segment(&self) -> usize {
        self.samples_per_segment
    }

    /// Every produced sample in order.
    pub fn samples(&self) -> &[OutputSample] {
        &self.samples
    }

    /// Number of leading samples in the startup transient.
    pub fn transient_len(&self) -> usize {
        (TRANSIENT_SEGMENTS * self.samples_per_segment).min(self.samples.len())
    }

    /// Samples after the startup transient.
    pub fn settled(&self) -> &[OutputSample] {
        &self.samples[self.transient_len()..]
    }

    /// Samples clipped to the format range.
    pub fn saturation_events(&self) -> u64 {
        self.saturation_events
    }

    /// Total ROM words read.
    pub fn rom_reads(&self) -> u64 {
        self.rom_reads
    }
}

/// Cycle accounting of a run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleReport {
    /// Cycles for the whole run.
    pub total_cycles: u64,
    /// Exact cycles per sample as a reduced numerator and denominator.
    pub cycles_per_sample: (u64, u64),
    /// Samples the run produces.
    pub samples: u64,
    /// Human-readable statement of the prices behind the totals.
    pub model_description: String,
}

impl CycleReport {
    /// Cycles per sample as a float.
    pub fn cycles_per_sample_f64(&self) -> f64 {
        self.cycles_per_sample.0 as f64 / self.cycles_per_sample.1 as f64
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Closed-form cycle accounting for a run of `samples` outputs: every
/// sample pays the multiply and summator prices, and every address wrap
/// (one per completed segment, the terminal wrap included) pays the shift
/// price.
pub fn cycle_report(samples: u64, config: &DatapathConfig) -> CycleReport {
    let costs = config.cycle_costs;
    let k = config.rom.samples_per_segment() as u64;
    let total_cycles = samples * costs.per_sample() + (samples / k) * costs.shift;
    let cycles_per_sample = if samples == 0 {
        (0, 1)
    } else {
        let d = gcd(total_cycles, samples);
        (total_cycles / d, samples / d)
    };
    CycleReport {
        total_cycles,
        cycles_per_sample,
        samples,
        model_description: format!(
            "{} multiply + {} summator cycle(s) per sample, four lanes in parallel; \
             {} cycle(s) per coefficient shift, one shift per {} samples",
            costs.multiply, costs.summator, costs.shift, k
        ),
    }
}

/// Runs the datapath over a prepared signal and returns the trace with its
/// cycle accounting.
///
/// # Errors
///
/// Shape error when the signal margin is too small for the coefficient
/// rule; range error when a coefficient does not fit the word format.
pub fn run_simulation(
    signal: &SampledSignal,
    config: &DatapathConfig,
) -> Result<(SimulationTrace, CycleReport)> {
    let coeffs = compute_coefficients(signal)?;
    let mut state = DatapathState::preset(&coeffs, config.rom.format())?;
    let mut samples = Vec::with_capacity(coeffs.len() * config.rom.samples_per_segment());
    while let StepOutcome::Produced(sample) = state.step_cycle(config) {
        samples.push(sample);
    }
    let report = cycle_report(samples.len() as u64, config);
    debug_assert_eq!(report.total_cycles, state.cycles());
    let trace = SimulationTrace {
        format: config.rom.format(),
        samples_per_segment: config.rom.samples_per_segment(),
        samples,
        saturation_events: state.saturation_events(),
        rom_reads: state.rom_reads(),
    };
    Ok((trace, report))
}

/// Extends raw interior samples by the config's extension rule, then runs
/// the datapath over them.
///
/// # Errors
///
/// As [`run_simulation`], plus the shape and numeric errors of the
/// extension step.
pub fn run_simulation_raw(
    raw: &[f64],
    grid: &UniformGrid,
    config: &DatapathConfig,
) -> Result<(SimulationTrace, CycleReport)> {
    let signal = extend_signal(raw, grid, EXTENSION_MARGIN, config.extension_rule)?;
    run_simulation(&signal, config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::SplineError;
    use crate::rom::build_rom_bank;
    use crate::spline::{approximate_function, evaluate_spline_local, nodal_value};

    fn config(k: usize) -> DatapathConfig {
        DatapathConfig::new(build_rom_bank(k, FixedPointFormat::q16_14()).unwrap())
    }

    fn linear_signal() -> SampledSignal {
        let grid = UniformGrid::new(0.0, 1.0, 0.25).unwrap();
        let raw: Vec<f64> = (0..=4).map(|r| r as f64 * 0.25).collect();
        extend_signal(&raw, &grid, EXTENSION_MARGIN, ExtensionRule::QuadraticExtrapolate)
            .unwrap()
    }

    #[test]
    fn preset_clears_all_but_the_last_stage() {
        let coeffs = compute_coefficients(&linear_signal()).unwrap();
        let state = DatapathState::preset(&coeffs, FixedPointFormat::q16_14()).unwrap();
        assert_eq!(state.shift_register(), [0, 0, 0, -4096]);
        assert_eq!(state.addr(), 0);
        assert_eq!(state.segment(), 0);
        assert_eq!(state.samples_produced(), 0);
    }

    #[test]
    fn address_wrap_shifts_left_and_loads_the_next_coefficient() {
        let cfg = config(5);
        let coeffs = compute_coefficients(&linear_signal()).unwrap();
        let mut state = DatapathState::preset(&coeffs, cfg.rom.format()).unwrap();
        for _ in 0..5 {
            assert!(matches!(state.step_cycle(&cfg), StepOutcome::Produced(_)));
        }
        assert_eq!(state.shift_register(), [0, 0, -4096, 0]);
        assert_eq!(state.segment(), 1);
        assert_eq!(state.addr(), 0);
        for _ in 0..5 {
            state.step_cycle(&cfg);
        }
        assert_eq!(state.shift_register(), [0, -4096, 0, 4096]);
    }

    #[test]
    fn run_produces_a_sample_per_phase_of_every_coefficient() {
        let cfg = config(4);
        let signal = linear_signal();
        let (trace, report) = run_simulation(&signal, &cfg).unwrap();
        let coeff_count = signal.grid().node_count() + 2;
        assert_eq!(trace.samples().len(), coeff_count * 4);
        assert_eq!(report.samples, (coeff_count * 4) as u64);
        assert_eq!(trace.transient_len(), 12);
        assert_eq!(trace.settled().len(), (coeff_count - 3) * 4);
    }

    #[test]
    fn transient_covers_exactly_the_samples_left_of_the_interval() {
        let cfg = config(4);
        let (trace, _) = run_simulation(&linear_signal(), &cfg).unwrap();
        for s in trace.samples() {
            assert_eq!(s.transient, s.index < 12, "sample {}", s.index);
            if s.transient {
                assert!(s.x < 0.0, "transient sample at x = {}", s.x);
            } else {
                assert!(s.x >= 0.0, "settled sample at x = {}", s.x);
            }
        }
        let first_settled = trace.settled()[0];
        assert_eq!(first_settled.x, 0.0);
        let last = *trace.samples().last().unwrap();
        assert!((last.x - (1.0 - 0.25 / 4.0)).abs() < 1e-12);
    }

    #[test]
    fn settled_outputs_track_the_float_spline_within_word_error() {
        let grid = UniformGrid::new(0.0, 2.0, 0.25).unwrap();
        let f = |x: f64| x * x / 4.0;
        let coeffs =
            approximate_function(&f, &grid, ExtensionRule::QuadraticExtrapolate).unwrap();
        let raw: Vec<f64> = (0..=8).map(|r| f(r as f64 * 0.25)).collect();
        let cfg = config(8);
        let (trace, _) = run_simulation_raw(&raw, &grid, &cfg).unwrap();
        assert_eq!(trace.saturation_events(), 0);
        let step = 1.0 / cfg.rom.format().scale();
        for s in trace.settled() {
            let exact = evaluate_spline_local(&coeffs, s.x).unwrap();
            assert!(
                (s.value - exact).abs() <= 24.0 * step,
                "sample {} at x = {}: {} vs {}",
                s.index,
                s.x,
                s.value,
                exact
            );
        }
    }

    #[test]
    fn single_phase_run_yields_nodal_values() {
        let grid = UniformGrid::new(0.0, 2.0, 0.25).unwrap();
        let f = |x: f64| x * x / 4.0;
        let coeffs =
            approximate_function(&f, &grid, ExtensionRule::QuadraticExtrapolate).unwrap();
        let raw: Vec<f64> = (0..=8).map(|r| f(r as f64 * 0.25)).collect();
        let cfg = config(1);
        let (trace, _) = run_simulation_raw(&raw, &grid, &cfg).unwrap();
        let step = 1.0 / cfg.rom.format().scale();
        for (i, s) in trace.settled().iter().enumerate() {
            let exact = nodal_value(&coeffs, i as isize);
            assert!(
                (s.value - exact).abs() <= 24.0 * step,
                "node {i}: {} vs {exact}",
                s.value
            );
        }
    }

    #[test]
    fn summator_overflow_saturates_and_flags() {
        let grid = UniformGrid::new(0.0, 1.0, 0.25).unwrap();
        let raw = alloc::vec![1.9999; 5];
        let cfg = config(4);
        let (trace, _) = run_simulation_raw(&raw, &grid, &cfg).unwrap();
        assert!(trace.saturation_events() > 0);
        let max_word = cfg.rom.format().max_word();
        let min_word = cfg.rom.format().min_word();
        for s in trace.samples() {
            assert!(s.word <= max_word && s.word >= min_word);
            if s.saturated {
                assert_eq!(s.word, max_word);
            }
        }
    }

    #[test]
    fn preset_rejects_coefficients_outside_the_format_range() {
        let grid = UniformGrid::new(0.0, 1.0, 0.25).unwrap();
        let raw = alloc::vec![3.0; 5];
        let cfg = config(4);
        let err = run_simulation_raw(&raw, &grid, &cfg).unwrap_err();
        match err {
            SplineError::Range(msg) => assert!(msg.contains("coefficient -1"), "{msg}"),
            other => panic!("expected range error, got {other}"),
        }
    }

    #[test]
    fn default_prices_cost_two_cycles_per_sample() {
        let cfg = config(10);
        let (trace, report) = run_simulation(&linear_signal(), &cfg).unwrap();
        assert_eq!(report.samples as usize, trace.samples().len());
        assert_eq!(report.total_cycles, 2 * report.samples);
        assert_eq!(report.cycles_per_sample, (2, 1));
        assert_eq!(trace.rom_reads(), 4 * report.samples);
    }

    #[test]
    fn closed_form_accounting_matches_the_stepped_run() {
        let mut cfg = config(10);
        cfg.cycle_costs = CycleCosts {
            multiply: 2,
            summator: 3,
            shift: 5,
        };
        let coeffs = compute_coefficients(&linear_signal()).unwrap();
        let mut state = DatapathState::preset(&coeffs, cfg.rom.format()).unwrap();
        let mut produced = 0u64;
        while let StepOutcome::Produced(_) = state.step_cycle(&cfg) {
            produced += 1;
        }
        let report = cycle_report(produced, &cfg);
        assert_eq!(report.total_cycles, state.cycles());
        assert_eq!(report.total_cycles, produced * 5 + (produced / 10) * 5);
        assert_eq!(report.cycles_per_sample, (11, 2));
    }

    #[test]
    fn drained_state_stays_drained() {
        let cfg = config(2);
        let coeffs = compute_coefficients(&linear_signal()).unwrap();
        let mut state = DatapathState::preset(&coeffs, cfg.rom.format()).unwrap();
        while let StepOutcome::Produced(_) = state.step_cycle(&cfg) {}
        assert!(state.is_drained());
        let before = state.samples_produced();
        assert_eq!(state.step_cycle(&cfg), StepOutcome::Drained);
        assert_eq!(state.samples_produced(), before);
    }

    #[test]
    #[should_panic(expected = "does not match preset format")]
    fn stepping_with_a_foreign_rom_format_panics() {
        let cfg = config(4);
        let coeffs = compute_coefficients(&linear_signal()).unwrap();
        let other = FixedPointFormat::new(12, 10, true).unwrap();
        let mut state = DatapathState::preset(&coeffs, other).unwrap();
        state.step_cycle(&cfg);
    }
}
