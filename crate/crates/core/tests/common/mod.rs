#![allow(dead_code)]

use pyramid_stego::range::replace_low_bits;
use pyramid_stego::{RangeEntry, RangeTable, WavAudio};
use rand::{Rng, RngCore};
use rand_distr::{Distribution, Normal};

/// Random closure-valid table: split [0,256) into random dyadic intervals,
/// give each a depth no larger than its alignment allows, then merge some
/// equal-depth neighbours.
pub fn random_valid_table<R: Rng>(rng: &mut R) -> RangeTable {
    fn split<R: Rng>(rng: &mut R, low: u16, size_log2: u8, out: &mut Vec<RangeEntry>) {
        let stop = size_log2 <= 2 || rng.random_bool(0.35);
        if stop {
            let max_depth = size_log2.min(4);
            let depth = rng.random_range(0..=max_depth);
            let high = low + (1u16 << size_log2) - 1;
            out.push(RangeEntry::new(low as u8, high as u8, depth));
        } else {
            let half = 1u16 << (size_log2 - 1);
            split(rng, low, size_log2 - 1, out);
            split(rng, low + half, size_log2 - 1, out);
        }
    }
    let mut raw = Vec::new();
    split(rng, 0, 8, &mut raw);

    let mut merged: Vec<RangeEntry> = Vec::new();
    for e in raw {
        match merged.last_mut() {
            Some(last) if last.depth == e.depth && rng.random_bool(0.5) => last.high = e.high,
            _ => merged.push(e),
        }
    }
    RangeTable::new(merged).expect("generator only emits valid tables")
}

pub fn random_bytes<R: RngCore>(rng: &mut R, len: usize) -> Vec<u8> {
    let mut v = vec![0u8; len];
    rng.fill_bytes(&mut v);
    v
}

/// Bytes drawn from a normal distribution around 128, clamped to [0,255].
pub fn gaussian_bytes<R: Rng>(rng: &mut R, len: usize, sigma: f64) -> Vec<u8> {
    let n = Normal::new(128.0, sigma).unwrap();
    (0..len).map(|_| n.sample(rng).round().clamp(0.0, 255.0) as u8).collect()
}

/// A noisy sine tone encoded as PCM data bytes.
pub fn tone_bytes<R: Rng>(rng: &mut R, samples: usize, bits: u16) -> Vec<u8> {
    let freq = rng.random_range(100.0..2000.0);
    let amp = rng.random_range(0.05..0.9);
    let noise = Normal::new(0.0, 0.01).unwrap();
    let mut out = Vec::with_capacity(samples * usize::from(bits / 8));
    for i in 0..samples {
        let t = i as f64 / 44_100.0;
        let v = (amp * (2.0 * std::f64::consts::PI * freq * t).sin() + noise.sample(rng)).clamp(-1.0, 1.0);
        if bits == 8 {
            out.push((128.0 + v * 127.0).round() as u8);
        } else {
            out.extend_from_slice(&((v * 32767.0).round() as i16).to_le_bytes());
        }
    }
    out
}

pub fn cover(bits: u16, data: Vec<u8>) -> WavAudio {
    WavAudio::new_pcm(bits, 1, 44_100, data)
}

/// Expected normalized squared error per byte when every byte's permitted
/// low bits are overwritten with uniformly random bits, by enumerating every
/// byte value and every replacement pattern.
pub fn expected_byte_mse(table: &RangeTable) -> f64 {
    let mut total = 0.0;
    for b in 0..=255u8 {
        let k = table.classify(b);
        let patterns = 1u32 << k;
        let mut s = 0.0;
        for p in 0..patterns {
            let d = f64::from(b) - f64::from(replace_low_bits(b, p as u8, k));
            s += d * d;
        }
        total += s / f64::from(patterns);
    }
    total / 256.0 / (255.0 * 255.0)
}

fn chunk(out: &mut Vec<u8>, id: &[u8; 4], body: &[u8]) {
    out.extend_from_slice(id);
    out.extend_from_slice(&(body.len() as u32).to_le_bytes());
    out.extend_from_slice(body);
    if body.len() % 2 == 1 {
        out.push(0);
    }
}

fn fmt_body(bits: u16, channels: u16, rate: u32, extension: Option<&[u8]>) -> Vec<u8> {
    let align = channels * bits / 8;
    let mut b = Vec::new();
    b.extend_from_slice(&1u16.to_le_bytes());
    b.extend_from_slice(&channels.to_le_bytes());
    b.extend_from_slice(&rate.to_le_bytes());
    b.extend_from_slice(&(rate * u32::from(align)).to_le_bytes());
    b.extend_from_slice(&align.to_le_bytes());
    b.extend_from_slice(&bits.to_le_bytes());
    if let Some(ext) = extension {
        b.extend_from_slice(&(ext.len() as u16).to_le_bytes());
        b.extend_from_slice(ext);
    }
    b
}

fn riff(chunks: impl FnOnce(&mut Vec<u8>)) -> Vec<u8> {
    let mut f = b"RIFF\0\0\0\0WAVE".to_vec();
    chunks(&mut f);
    let n = (f.len() - 8) as u32;
    f[4..8].copy_from_slice(&n.to_le_bytes());
    f
}

/// Hand-built WAV files: canonical and non-canonical layouts.
/// Returns `(name, file bytes, expected data region)`.
pub fn fixture_corpus() -> Vec<(&'static str, Vec<u8>, Vec<u8>)> {
    let data8: Vec<u8> = (0..4200u32).map(|i| (128.0 + 100.0 * (i as f64 * 0.05).sin()) as u8).collect();
    let data16: Vec<u8> = (0..2100u32)
        .flat_map(|i| ((9000.0 * (i as f64 * 0.03).sin()) as i16).to_le_bytes())
        .collect();
    let odd: Vec<u8> = data8[..2101].to_vec();

    vec![
        ("canonical-8bit", WavAudio::new_pcm(8, 1, 8000, data8.clone()).serialize(), data8.clone()),
        ("canonical-16bit-stereo", WavAudio::new_pcm(16, 2, 44_100, data16.clone()).serialize(), data16.clone()),
        (
            "list-before-data",
            riff(|f| {
                chunk(f, b"fmt ", &fmt_body(8, 1, 11_025, None));
                chunk(f, b"LIST", b"INFOINAM\x06\0\0\0cover\0");
                chunk(f, b"data", &data8);
            }),
            data8.clone(),
        ),
        (
            "trailing-chunk",
            riff(|f| {
                chunk(f, b"fmt ", &fmt_body(16, 1, 22_050, None));
                chunk(f, b"data", &data16);
                chunk(f, b"id3 ", b"ID3\x03\0\0\0\0\0\x0a0123456789");
            }),
            data16.clone(),
        ),
        (
            "fmt-extension-fact-odd-data",
            riff(|f| {
                chunk(f, b"fmt ", &fmt_body(8, 1, 8000, Some(&[])));
                chunk(f, b"fact", &2101u32.to_le_bytes());
                chunk(f, b"data", &odd);
                chunk(f, b"LIST", b"INFOICMT\x03\0\0\0hi\0\0");
            }),
            odd,
        ),
    ]
}
