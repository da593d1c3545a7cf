//! wasm-bindgen bindings for the static demo page in `www/`.
//!
//! Every exported function is a thin wrapper over a plain Rust function that
//! returns `Result<_, String>`, so the logic is testable off the browser.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use wasm_bindgen::prelude::*;

use pyramid_stego::metrics::DEFAULT_ZCR_FRAME_LEN;
use pyramid_stego::{CapacityReport, HeaderMode, Method, QualityReport, RangeTable, WavAudio};

fn method(table_text: &str, baseline: bool) -> Result<Method, String> {
    if baseline {
        return Ok(Method::PlainLsb);
    }
    if table_text.trim().is_empty() {
        return Ok(Method::Pyramid(RangeTable::default_table()));
    }
    table_text.parse().map(Method::Pyramid).map_err(|e| e.to_string())
}

fn parse(bytes: &[u8]) -> Result<WavAudio, String> {
    WavAudio::parse(bytes, HeaderMode::RiffChunks).map_err(|e| e.to_string())
}

/// Noisy sine tone as a complete WAV file.
pub fn synth_cover_bytes(bits: u16, seconds: f64, freq: f64, amplitude: f64, noise: f64, seed: u64) -> Vec<u8> {
    let rate = 22_050u32;
    let n = (seconds.max(0.01) * f64::from(rate)) as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut data = Vec::with_capacity(n * usize::from(bits / 8));
    for i in 0..n {
        let t = i as f64 / f64::from(rate);
        let dither = if noise > 0.0 { rng.random_range(-noise..noise) } else { 0.0 };
        let v = (amplitude * (std::f64::consts::TAU * freq * t).sin() + dither).clamp(-1.0, 1.0);
        if bits == 8 {
            data.push((128.0 + v * 127.0).round() as u8);
        } else {
            data.extend_from_slice(&((v * 32767.0).round() as i16).to_le_bytes());
        }
    }
    WavAudio::new_pcm(if bits == 8 { 8 } else { 16 }, 1, rate, data).serialize()
}

#[derive(Serialize)]
struct TableProfile {
    depths: Vec<u8>,
    histogram: Vec<u64>,
    capacity: CapacityReport,
}

pub fn table_profile_json(table_text: &str, cover: &[u8], baseline: bool) -> Result<String, String> {
    let m = method(table_text, baseline)?;
    let w = parse(cover)?;
    let depths = match &m {
        Method::Pyramid(t) => t.depths().to_vec(),
        Method::PlainLsb => vec![1; 256],
    };
    let profile = TableProfile {
        depths,
        histogram: pyramid_stego::metrics::amplitude_histogram(w.data_bytes()).to_vec(),
        capacity: CapacityReport::new(&m, &w),
    };
    serde_json::to_string(&profile).map_err(|e| e.to_string())
}

pub fn embed_bytes(cover: &[u8], message: &[u8], table_text: &str, baseline: bool) -> Result<Vec<u8>, String> {
    let m = method(table_text, baseline)?;
    let w = parse(cover)?;
    m.embed(&w, message).map(|s| s.serialize()).map_err(|e| e.to_string())
}

pub fn extract_bytes(stego: &[u8], table_text: &str, baseline: bool) -> Result<Vec<u8>, String> {
    let m = method(table_text, baseline)?;
    m.extract(&parse(stego)?).map_err(|e| e.to_string())
}

pub fn analyze_json(cover: &[u8], stego: &[u8], table_text: &str, baseline: bool, frame_len: usize) -> Result<String, String> {
    let m = method(table_text, baseline)?;
    let (c, s) = (parse(cover)?, parse(stego)?);
    let secret_bytes = m.extract(&s).map_or(0, |v| v.len() as u64);
    let frame_len = if frame_len == 0 { DEFAULT_ZCR_FRAME_LEN } else { frame_len };
    QualityReport::compute(&c, &s, secret_bytes, frame_len)
        .map(|r| r.to_json())
        .map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn synth_cover(bits: u16, seconds: f64, freq: f64, amplitude: f64, noise: f64, seed: u32) -> Vec<u8> {
    synth_cover_bytes(bits, seconds, freq, amplitude, noise, u64::from(seed))
}

#[wasm_bindgen]
pub fn default_table_text() -> String {
    RangeTable::default_table().to_string()
}

/// Depth per byte value, cover histogram and capacity, as JSON.
#[wasm_bindgen]
pub fn table_profile(table_text: &str, cover: &[u8], baseline: bool) -> Result<String, JsError> {
    table_profile_json(table_text, cover, baseline).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn embed(cover: &[u8], message: &str, table_text: &str, baseline: bool) -> Result<Vec<u8>, JsError> {
    embed_bytes(cover, message.as_bytes(), table_text, baseline).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn extract(stego: &[u8], table_text: &str, baseline: bool) -> Result<String, JsError> {
    let bytes = extract_bytes(stego, table_text, baseline).map_err(|e| JsError::new(&e))?;
    Ok(String::from_utf8_lossy(&bytes).into_owned())
}

/// Quality report (MSE, PSNR, ZCR, histograms) as JSON.
#[wasm_bindgen]
pub fn analyze(cover: &[u8], stego: &[u8], table_text: &str, baseline: bool, frame_len: usize) -> Result<String, JsError> {
    analyze_json(cover, stego, table_text, baseline, frame_len).map_err(|e| JsError::new(&e))
}
