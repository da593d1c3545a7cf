//! Quality metrics comparing a cover against its stego version.
//!
//! MSE works on amplitudes normalized to `[0, 1]`: unsigned 8-bit samples are
//! divided by 255, signed 16-bit samples are offset by 32768 and divided by
//! 65535. Two PSNR variants are reported: `10·log10(255 / MSE)` and the
//! conventional `10·log10(255² / MSE)`.

use std::fmt::Write as _;

use serde::ser::{Serialize, Serializer};
use serde::Serialize as DeriveSerialize;
use thiserror::Error;

use crate::wav::WavAudio;

pub const DEFAULT_ZCR_FRAME_LEN: usize = 256;
const PEAK: f64 = 255.0;

#[derive(Debug, Error, PartialEq)]
pub enum MetricsError {
    #[error("signal lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("empty signal")]
    EmptySignal,
    #[error("MSE is zero: signals are identical")]
    ZeroMse,
    #[error("frame length {0} is too short (need at least 2)")]
    FrameTooShort(usize),
    #[error("cover size is zero")]
    ZeroCover,
    #[error("bit depths differ: {0} vs {1}")]
    BitDepthMismatch(u16, u16),
}

/// Decodes data-region bytes into amplitudes in `[0, 1]`.
pub fn normalized_samples(data: &[u8], bits_per_sample: u16) -> Vec<f64> {
    match bits_per_sample {
        16 => data
            .chunks_exact(2)
            .map(|c| (f64::from(i16::from_le_bytes([c[0], c[1]])) + 32768.0) / 65535.0)
            .collect(),
        _ => data.iter().map(|&b| f64::from(b) / 255.0).collect(),
    }
}

/// Decodes data-region bytes into zero-centred integer samples.
pub fn centered_samples(data: &[u8], bits_per_sample: u16) -> Vec<i32> {
    match bits_per_sample {
        16 => data
            .chunks_exact(2)
            .map(|c| i32::from(i16::from_le_bytes([c[0], c[1]])))
            .collect(),
        _ => data.iter().map(|&b| i32::from(b) - 128).collect(),
    }
}

pub fn mse(x: &[f64], y: &[f64]) -> Result<f64, MetricsError> {
    if x.len() != y.len() {
        return Err(MetricsError::LengthMismatch(x.len(), y.len()));
    }
    if x.is_empty() {
        return Err(MetricsError::EmptySignal);
    }
    let sum: f64 = x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum();
    Ok(sum / x.len() as f64)
}

pub fn psnr_eq2(mse: f64) -> Result<f64, MetricsError> {
    if mse <= 0.0 {
        return Err(MetricsError::ZeroMse);
    }
    Ok(10.0 * (PEAK / mse).log10())
}

pub fn psnr_standard(mse: f64) -> Result<f64, MetricsError> {
    if mse <= 0.0 {
        return Err(MetricsError::ZeroMse);
    }
    Ok(10.0 * (PEAK * PEAK / mse).log10())
}

/// A PSNR value, or the marker for bit-identical signals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Psnr {
    Identical,
    Db(f64),
}

impl Psnr {
    fn from_result(r: Result<f64, MetricsError>) -> Self {
        r.map(Psnr::Db).unwrap_or(Psnr::Identical)
    }

    pub fn db(self) -> Option<f64> {
        match self {
            Psnr::Db(v) => Some(v),
            Psnr::Identical => None,
        }
    }
}

impl std::fmt::Display for Psnr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Psnr::Identical => f.write_str("identical"),
            Psnr::Db(v) => write!(f, "{v:.3} dB"),
        }
    }
}

impl Serialize for Psnr {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Psnr::Identical => s.serialize_str("identical"),
            Psnr::Db(v) => s.serialize_f64(*v),
        }
    }
}

fn sgn(v: i32) -> i32 {
    if v >= 0 {
        1
    } else {
        -1
    }
}

/// Zero-crossing rate per frame; a trailing partial frame is dropped.
pub fn zcr(x: &[i32], frame_len: usize) -> Result<Vec<f64>, MetricsError> {
    if frame_len < 2 {
        return Err(MetricsError::FrameTooShort(frame_len));
    }
    Ok(x.chunks_exact(frame_len)
        .map(|frame| {
            let crossings: i32 = frame.windows(2).map(|w| (sgn(w[1]) - sgn(w[0])).abs()).sum();
            f64::from(crossings) / (2.0 * frame_len as f64)
        })
        .collect())
}

pub fn amplitude_histogram(x: &[u8]) -> [u64; 256] {
    let mut bins = [0u64; 256];
    for &b in x {
        bins[usize::from(b)] += 1;
    }
    bins
}

pub fn payload_percent(secret_bytes: u64, cover_bytes: u64) -> Result<f64, MetricsError> {
    if cover_bytes == 0 {
        return Err(MetricsError::ZeroCover);
    }
    Ok(100.0 * secret_bytes as f64 / cover_bytes as f64)
}

#[derive(Debug, Clone, PartialEq, DeriveSerialize)]
pub struct QualityReport {
    pub bits_per_sample: u16,
    pub samples: usize,
    pub mse: f64,
    pub psnr_eq2_db: Psnr,
    pub psnr_standard_db: Psnr,
    pub secret_bytes: u64,
    pub cover_file_bytes: u64,
    pub payload_percent: f64,
    pub modified_bytes: usize,
    pub zcr_frame_len: usize,
    pub cover_zcr: Vec<f64>,
    pub stego_zcr: Vec<f64>,
    pub cover_histogram: Vec<u64>,
    pub stego_histogram: Vec<u64>,
}

impl QualityReport {
    pub fn compute(
        cover: &WavAudio,
        stego: &WavAudio,
        secret_bytes: u64,
        zcr_frame_len: usize,
    ) -> Result<Self, MetricsError> {
        let bits = cover.bits_per_sample();
        if bits != stego.bits_per_sample() {
            return Err(MetricsError::BitDepthMismatch(bits, stego.bits_per_sample()));
        }
        let (cd, sd) = (cover.data_bytes(), stego.data_bytes());
        if cd.len() != sd.len() {
            return Err(MetricsError::LengthMismatch(cd.len(), sd.len()));
        }

        let x = normalized_samples(cd, bits);
        let y = normalized_samples(sd, bits);
        let mse = mse(&x, &y)?;
        let cover_file_bytes = cover.total_len() as u64;

        Ok(QualityReport {
            bits_per_sample: bits,
            samples: x.len(),
            mse,
            psnr_eq2_db: Psnr::from_result(psnr_eq2(mse)),
            psnr_standard_db: Psnr::from_result(psnr_standard(mse)),
            secret_bytes,
            cover_file_bytes,
            payload_percent: payload_percent(secret_bytes, cover_file_bytes)?,
            modified_bytes: cd.iter().zip(sd).filter(|(a, b)| a != b).count(),
            zcr_frame_len,
            cover_zcr: zcr(&centered_samples(cd, bits), zcr_frame_len)?,
            stego_zcr: zcr(&centered_samples(sd, bits), zcr_frame_len)?,
            cover_histogram: amplitude_histogram(cd).to_vec(),
            stego_histogram: amplitude_histogram(sd).to_vec(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is always serializable")
    }

    /// Short human-readable summary.
    pub fn summary(&self) -> String {
        format!(
            "MSE: {:.6e}\nPSNR (255/MSE): {}\nPSNR (255^2/MSE): {}\nPayload: {} of {} bytes ({:.2}%)\n",
            self.mse,
            self.psnr_eq2_db,
            self.psnr_standard_db,
            self.secret_bytes,
            self.cover_file_bytes,
            self.payload_percent
        )
    }
}

pub fn histogram_csv(bins: &[u64]) -> String {
    let mut out = String::from("value,count\n");
    for (v, c) in bins.iter().enumerate() {
        let _ = writeln!(out, "{v},{c}");
    }
    out
}

pub fn zcr_csv(frames: &[f64]) -> String {
    let mut out = String::from("frame_index,zcr\n");
    for (i, z) in frames.iter().enumerate() {
        let _ = writeln!(out, "{i},{z}");
    }
    out
}
