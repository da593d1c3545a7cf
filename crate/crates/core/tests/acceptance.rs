//! Acceptance criteria. Each test prints one `PASS`/`FAIL` line
//! (visible with `--nocapture`) and fails if its criterion does not hold.

mod common;

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pyramid_stego::codec::{self, net_capacity_bytes, CodecError};
use pyramid_stego::metrics::{self, psnr_eq2};
use pyramid_stego::range::replace_low_bits;
use pyramid_stego::{pyramid, CapacityReport, HeaderMode, Method, QualityReport, RangeTable, WavAudio};

use common::*;

const TRIALS: usize = 1000;
const MIN_DATA: f64 = 1024.0;
const MAX_DATA: f64 = 1_048_576.0;
const MAX_FILL: f64 = 0.95;
const ROUND_TRIP_BUDGET: Duration = Duration::from_secs(60);
const PAYLOAD_BAND: (f64, f64) = (15.0, 25.0);
const MIN_PSNR_STANDARD_DB: f64 = 40.0;
const MSE_ORACLE_TOLERANCE: f64 = 0.05;

fn verdict(n: u32, name: &str, ok: bool, detail: String) {
    println!("criterion {n} [{}] {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {n} ({name}) failed: {detail}");
}

#[derive(Debug, Clone, Copy)]
struct Trial {
    round_trip: bool,
    capacity_invariant: bool,
    delta_bounded: bool,
    header_untouched: bool,
    data_len: usize,
}

struct TrialRun {
    trials: Vec<Trial>,
    elapsed: Duration,
}

fn run_trial(index: usize) -> Trial {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0000 + index as u64);
    let bits: u16 = if index.is_multiple_of(2) { 8 } else { 16 };
    let len = MIN_DATA * (MAX_DATA / MIN_DATA).powf(rng.random::<f64>());
    let len = (len as usize) & !1;

    let data = match index % 3 {
        0 => random_bytes(&mut rng, len),
        1 => {
            let sigma = rng.random_range(8.0..64.0);
            gaussian_bytes(&mut rng, len, sigma)
        }
        _ => tone_bytes(&mut rng, len / usize::from(bits / 8), bits),
    };
    let cover = WavAudio::new_pcm(bits, 1, 44_100, data);

    // Default table for half the trials, random valid tables for the rest.
    let mut table = RangeTable::default_table();
    let mut gross = table.block_capacity_bits(cover.data_bytes());
    if (index / 2) % 2 == 1 || gross < codec::frame_bits(0) {
        loop {
            table = random_valid_table(&mut rng);
            gross = table.block_capacity_bits(cover.data_bytes());
            if gross >= codec::frame_bits(0) {
                break;
            }
        }
    }

    let net = net_capacity_bytes(gross);
    let secret_len = rng.random_range(0..=(net as f64 * MAX_FILL) as usize);
    let secret = random_bytes(&mut rng, secret_len);

    let stego = codec::embed(&cover, &secret, &table).expect("secret sized within capacity");
    let round_trip = codec::extract(&stego, &table).as_deref() == Ok(&secret[..]);
    let capacity_invariant = table.block_capacity_bits(stego.data_bytes()) == gross;
    let delta_bounded = cover
        .data_bytes()
        .iter()
        .zip(stego.data_bytes())
        .all(|(&a, &b)| u16::from(a.abs_diff(b)) < (1u16 << table.classify(a)));
    let header_untouched = stego.prefix_bytes() == cover.prefix_bytes()
        && stego.suffix_bytes() == cover.suffix_bytes()
        && stego.data_bytes().len() == cover.data_bytes().len();

    Trial { round_trip, capacity_invariant, delta_bounded, header_untouched, data_len: len }
}

fn trials() -> &'static TrialRun {
    static RUN: OnceLock<TrialRun> = OnceLock::new();
    RUN.get_or_init(|| {
        let start = Instant::now();
        let workers = std::thread::available_parallelism().map_or(4, |n| n.get());
        let mut trials = vec![None; TRIALS];
        std::thread::scope(|s| {
            for (w, slots) in trials.chunks_mut(TRIALS.div_ceil(workers)).enumerate() {
                let base = w * TRIALS.div_ceil(workers);
                s.spawn(move || {
                    for (j, slot) in slots.iter_mut().enumerate() {
                        *slot = Some(run_trial(base + j));
                    }
                });
            }
        });
        TrialRun {
            trials: trials.into_iter().map(|t| t.unwrap()).collect(),
            elapsed: start.elapsed(),
        }
    })
}

#[test]
fn criterion_1_round_trip_soundness() {
    let run = trials();
    let passed = run.trials.iter().filter(|t| t.round_trip).count();
    let bytes: usize = run.trials.iter().map(|t| t.data_len).sum();
    let ok = passed == TRIALS && run.elapsed < ROUND_TRIP_BUDGET;
    verdict(
        1,
        "round-trip soundness",
        ok,
        format!(
            "{passed}/{TRIALS} trials recovered the secret; {:.1} MB of cover data in {:.1?} (budget {:?})",
            bytes as f64 / 1e6,
            run.elapsed,
            ROUND_TRIP_BUDGET
        ),
    );
}

#[test]
fn criterion_2_closure_and_capacity_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut tables = vec![RangeTable::default_table()];
    tables.extend((0..50).map(|_| random_valid_table(&mut rng)));

    let mut checked = 0u64;
    let mut violations = 0u64;
    for t in &tables {
        for b in 0..=255u8 {
            let k = t.classify(b);
            for p in 0..(1u8 << k) {
                checked += 1;
                if t.classify(replace_low_bits(b, p, k)) != k {
                    violations += 1;
                }
            }
        }
    }
    let capacity_breaks = trials().trials.iter().filter(|t| !t.capacity_invariant).count();
    verdict(
        2,
        "closure / capacity invariance",
        violations == 0 && capacity_breaks == 0,
        format!(
            "{violations} closure violations in {checked} (table, byte, pattern) cases over {} tables; \
             {capacity_breaks} capacity changes over {TRIALS} trials",
            tables.len()
        ),
    );
}

#[test]
fn criterion_3_worked_examples() {
    let range_example = codec::embed_byte(63, 0b011, 3);
    let rows = [(0b1001_0010u8, 0u8, 0b1001_0010u8), (0b0101_0011, 1, 0b0101_0011), (0b1001_1011, 0, 0b1001_1010)];
    let rows_ok = rows.iter().all(|&(b, bit, want)| codec::embed_byte(b, bit, 1) == want);
    let depth_ok = RangeTable::default_table().classify(63) == 3;
    verdict(
        3,
        "worked-example fidelity",
        range_example == 59 && rows_ok && depth_ok,
        format!("embed_byte(63, 011, 3) = {range_example}; LSB table rows match: {rows_ok}; classify(63) = 3: {depth_ok}"),
    );
}

#[test]
fn criterion_4_payload_band() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let table = Method::Pyramid(RangeTable::default_table());
    let profiles = [
        ("uniform", random_bytes(&mut rng, 1 << 20)),
        ("gaussian(128, 32)", gaussian_bytes(&mut rng, 1 << 20, 32.0)),
    ];
    let mut ok = true;
    let mut detail = Vec::new();
    for (name, data) in profiles {
        let r = CapacityReport::new(&table, &WavAudio::new_pcm(8, 1, 44_100, data));
        let inside = (PAYLOAD_BAND.0..=PAYLOAD_BAND.1).contains(&r.net_percent);
        ok &= inside;
        detail.push(format!("{name} {:.2}%", r.net_percent));
    }
    verdict(
        4,
        "payload band",
        ok,
        format!("{} (band {:?}%)", detail.join(", "), PAYLOAD_BAND),
    );
}

#[test]
fn criterion_5_metric_formulas() {
    let bass1 = psnr_eq2(0.000628).unwrap();
    let ten = psnr_eq2(25.5).unwrap();
    let z = metrics::zcr(&[1, 1, -1, -1], 4).unwrap();
    let n = 64;
    let alt: Vec<i32> = (0..n).map(|i| if i % 2 == 0 { 100 } else { -100 }).collect();
    let za = metrics::zcr(&alt, n).unwrap();
    let ok = (bass1 - 56.09).abs() <= 0.01
        && ten == 10.0
        && z == vec![0.25]
        && za == vec![(n as f64 - 1.0) / n as f64];
    verdict(
        5,
        "metric formulas",
        ok,
        format!("psnr_eq2(0.000628) = {bass1:.4} dB; psnr_eq2(25.5) = {ten} dB; zcr(++--) = {z:?}; zcr(alt, {n}) = {za:?}"),
    );
}

#[test]
fn criterion_6_distortion_ceiling() {
    let unbounded = trials().trials.iter().filter(|t| !t.delta_bounded).count();

    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let table = RangeTable::default_table();
    let mut detail = vec![format!("{unbounded} trials with a byte delta >= 2^depth")];
    let mut ok = unbounded == 0;

    for bits in [8u16, 16] {
        let cover = WavAudio::new_pcm(bits, 1, 44_100, random_bytes(&mut rng, 1 << 20));
        let net = net_capacity_bytes(table.block_capacity_bits(cover.data_bytes()));
        let secret = random_bytes(&mut rng, net as usize);
        let stego = codec::embed(&cover, &secret, &table).unwrap();
        let r = QualityReport::compute(&cover, &stego, secret.len() as u64, 256).unwrap();
        let std_db = r.psnr_standard_db.db().unwrap();
        ok &= std_db >= MIN_PSNR_STANDARD_DB;
        detail.push(format!(
            "{bits}-bit full capacity: MSE {:.4e}, PSNR(255/MSE) {:.2} dB, PSNR(255^2/MSE) {std_db:.2} dB",
            r.mse,
            r.psnr_eq2_db.db().unwrap()
        ));

        if bits == 8 {
            let expected = expected_byte_mse(&table);
            // Tail bytes outside the pyramid blocks are never modified.
            let usable = pyramid::usable_len(cover.data_bytes().len()) as f64;
            let expected = expected * usable / cover.data_bytes().len() as f64;
            let rel = (r.mse - expected).abs() / expected;
            ok &= rel <= MSE_ORACLE_TOLERANCE;
            detail.push(format!("enumerated MSE {expected:.4e}, relative error {:.3}%", rel * 100.0));
        }
    }
    verdict(6, "distortion ceiling", ok, detail.join("; "));
}

#[test]
fn criterion_7_format_safety() {
    let table = RangeTable::default_table();
    let mut failures = Vec::new();
    let corpus = fixture_corpus();
    for (name, file, _) in &corpus {
        for mode in [HeaderMode::RiffChunks, HeaderMode::Compat44] {
            let w = WavAudio::parse(file, mode).unwrap();
            if &w.serialize() != file {
                failures.push(format!("{name} {mode:?}: round trip differs"));
            }
        }
        let w = WavAudio::parse(file, HeaderMode::RiffChunks).unwrap();
        let stego = codec::embed(&w, b"format safety", &table).unwrap().serialize();
        let back = WavAudio::parse(&stego, HeaderMode::RiffChunks).unwrap();
        let same_layout = back.prefix_bytes() == w.prefix_bytes()
            && back.suffix_bytes() == w.suffix_bytes()
            && back.data_bytes().len() == w.data_bytes().len()
            && (back.bits_per_sample(), back.num_channels(), back.sample_rate())
                == (w.bits_per_sample(), w.num_channels(), w.sample_rate());
        if !same_layout || stego.len() != file.len() {
            failures.push(format!("{name}: stego layout changed"));
        }
    }
    let header_breaks = trials().trials.iter().filter(|t| !t.header_untouched).count();
    verdict(
        7,
        "format safety",
        failures.is_empty() && header_breaks == 0,
        format!(
            "{} fixtures, failures {failures:?}; {header_breaks} trials altered header/suffix/length",
            corpus.len()
        ),
    );
}

#[test]
fn criterion_8_failure_modes() {
    let table = RangeTable::default_table();
    let mut failures = Vec::new();

    let silent = WavAudio::new_pcm(8, 1, 8000, vec![0; 4200]);
    match codec::embed(&silent, b"x", &table) {
        Err(CodecError::CapacityExceeded { required_bits: 72, available_bits: 0 }) => {}
        other => failures.push(format!("zero-capacity cover: {other:?}")),
    }
    let small = WavAudio::new_pcm(8, 1, 8000, vec![200; 210]);
    let too_big = vec![1u8; 400];
    if !matches!(codec::embed(&small, &too_big, &table), Err(CodecError::CapacityExceeded { .. })) {
        failures.push("oversized secret accepted".into());
    }

    let alt = RangeTable::new(vec![
        pyramid_stego::RangeEntry::new(0, 63, 2),
        pyramid_stego::RangeEntry::new(64, 255, 3),
    ])
    .unwrap();
    for (name, file, _) in fixture_corpus() {
        let w = WavAudio::parse(&file, HeaderMode::RiffChunks).unwrap();
        if !matches!(codec::extract(&w, &table), Err(CodecError::BadMagic { .. })) {
            failures.push(format!("{name}: pristine extraction did not report BadMagic"));
        }
        let secret = b"mismatched tables must not decode";
        let stego = codec::embed(&w, secret, &table).unwrap();
        match codec::extract(&stego, &alt) {
            Err(CodecError::BadMagic { .. }) | Err(CodecError::Truncated { .. }) => {}
            other => failures.push(format!("{name}: mismatched table gave {other:?}")),
        }
    }
    verdict(8, "failure modes", failures.is_empty(), format!("failures: {failures:?}"));
}
