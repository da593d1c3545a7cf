//! WAV container parsing with a preserved, never-modified header region.
//!
//! A parsed file is split into three raw byte regions: everything before the
//! embeddable samples (`prefix`), the sample bytes themselves (`data`) and any
//! trailing chunks (`suffix`). Serialization concatenates them back, so an
//! unmodified [`WavAudio`] reproduces its input bit for bit.

use thiserror::Error;

/// Length of the canonical RIFF/WAVE header in front of the sample bytes.
pub const CANONICAL_HEADER_LEN: usize = 44;

const PCM_FORMAT_TAG: u16 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HeaderMode {
    /// Treat the first 44 bytes as the header and everything after as data.
    Compat44,
    /// Walk the RIFF chunk list and expose only the `data` chunk payload.
    #[default]
    RiffChunks,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WavError {
    #[error("file too short: {len} bytes, need at least {min}")]
    TooShort { len: usize, min: usize },
    #[error("missing RIFF/WAVE magic")]
    NotRiff,
    #[error("no data chunk found")]
    NoDataChunk,
    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WavAudio {
    prefix: Vec<u8>,
    data: Vec<u8>,
    suffix: Vec<u8>,
    bits_per_sample: u16,
    num_channels: u16,
    sample_rate: u32,
}

#[derive(Debug, Clone, Copy)]
struct FmtInfo {
    format_tag: u16,
    num_channels: u16,
    sample_rate: u32,
    bits_per_sample: u16,
}

impl FmtInfo {
    fn read(fmt: &[u8]) -> Result<Self, WavError> {
        if fmt.len() < 16 {
            return Err(WavError::UnsupportedFormat(format!(
                "fmt chunk is {} bytes, need 16",
                fmt.len()
            )));
        }
        Ok(FmtInfo {
            format_tag: read_u16(fmt, 0),
            num_channels: read_u16(fmt, 2),
            sample_rate: read_u32(fmt, 4),
            bits_per_sample: read_u16(fmt, 14),
        })
    }

    fn check(self) -> Result<Self, WavError> {
        if self.format_tag != PCM_FORMAT_TAG {
            return Err(WavError::UnsupportedFormat(format!(
                "format tag {:#06x} is not PCM",
                self.format_tag
            )));
        }
        if self.bits_per_sample != 8 && self.bits_per_sample != 16 {
            return Err(WavError::UnsupportedFormat(format!(
                "{} bits per sample (only 8 and 16 are supported)",
                self.bits_per_sample
            )));
        }
        if self.num_channels == 0 || self.sample_rate == 0 {
            return Err(WavError::UnsupportedFormat(
                "zero channels or zero sample rate".into(),
            ));
        }
        Ok(self)
    }
}

fn read_u16(b: &[u8], at: usize) -> u16 {
    u16::from_le_bytes([b[at], b[at + 1]])
}

fn read_u32(b: &[u8], at: usize) -> u32 {
    u32::from_le_bytes([b[at], b[at + 1], b[at + 2], b[at + 3]])
}

impl WavAudio {
    /// Parses `bytes` according to `mode`.
    pub fn parse(bytes: &[u8], mode: HeaderMode) -> Result<Self, WavError> {
        match mode {
            HeaderMode::Compat44 => Self::parse_compat(bytes),
            HeaderMode::RiffChunks => Self::parse_riff(bytes),
        }
    }

    fn parse_compat(bytes: &[u8]) -> Result<Self, WavError> {
        if bytes.len() <= CANONICAL_HEADER_LEN {
            return Err(WavError::TooShort {
                len: bytes.len(),
                min: CANONICAL_HEADER_LEN + 1,
            });
        }
        // The canonical layout puts the fmt payload at offset 20.
        let fmt = FmtInfo::read(&bytes[20..36])?.check()?;
        Ok(WavAudio {
            prefix: bytes[..CANONICAL_HEADER_LEN].to_vec(),
            data: bytes[CANONICAL_HEADER_LEN..].to_vec(),
            suffix: Vec::new(),
            bits_per_sample: fmt.bits_per_sample,
            num_channels: fmt.num_channels,
            sample_rate: fmt.sample_rate,
        })
    }

    fn parse_riff(bytes: &[u8]) -> Result<Self, WavError> {
        if bytes.len() < 12 || &bytes[0..4] != b"RIFF" || &bytes[8..12] != b"WAVE" {
            return Err(WavError::NotRiff);
        }

        let mut fmt = None;
        let mut pos = 12;
        while pos + 8 <= bytes.len() {
            let id = &bytes[pos..pos + 4];
            let declared = read_u32(bytes, pos + 4) as usize;
            let body = pos + 8;
            let end = body.saturating_add(declared).min(bytes.len());

            match id {
                b"fmt " => fmt = Some(FmtInfo::read(&bytes[body..end])?),
                b"data" => {
                    let fmt = fmt
                        .ok_or_else(|| {
                            WavError::UnsupportedFormat("data chunk before fmt chunk".into())
                        })?
                        .check()?;
                    return Ok(WavAudio {
                        prefix: bytes[..body].to_vec(),
                        data: bytes[body..end].to_vec(),
                        suffix: bytes[end..].to_vec(),
                        bits_per_sample: fmt.bits_per_sample,
                        num_channels: fmt.num_channels,
                        sample_rate: fmt.sample_rate,
                    });
                }
                _ => {}
            }
            // Chunks are padded to an even length.
            pos = end + (declared & 1);
        }
        Err(WavError::NoDataChunk)
    }

    /// Builds a canonical 44-byte-header PCM file around `data`.
    pub fn new_pcm(bits_per_sample: u16, num_channels: u16, sample_rate: u32, data: Vec<u8>) -> Self {
        let block_align = num_channels * (bits_per_sample / 8);
        let byte_rate = sample_rate * u32::from(block_align);
        let data_len = data.len() as u32;

        let mut h = Vec::with_capacity(CANONICAL_HEADER_LEN);
        h.extend_from_slice(b"RIFF");
        h.extend_from_slice(&(36 + data_len).to_le_bytes());
        h.extend_from_slice(b"WAVE");
        h.extend_from_slice(b"fmt ");
        h.extend_from_slice(&16u32.to_le_bytes());
        h.extend_from_slice(&PCM_FORMAT_TAG.to_le_bytes());
        h.extend_from_slice(&num_channels.to_le_bytes());
        h.extend_from_slice(&sample_rate.to_le_bytes());
        h.extend_from_slice(&byte_rate.to_le_bytes());
        h.extend_from_slice(&block_align.to_le_bytes());
        h.extend_from_slice(&bits_per_sample.to_le_bytes());
        h.extend_from_slice(b"data");
        h.extend_from_slice(&data_len.to_le_bytes());

        WavAudio {
            prefix: h,
            data,
            suffix: Vec::new(),
            bits_per_sample,
            num_channels,
            sample_rate,
        }
    }

    /// Concatenates prefix, data and suffix.
    pub fn serialize(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.total_len());
        out.extend_from_slice(&self.prefix);
        out.extend_from_slice(&self.data);
        out.extend_from_slice(&self.suffix);
        out
    }

    pub fn total_len(&self) -> usize {
        self.prefix.len() + self.data.len() + self.suffix.len()
    }

    pub fn prefix_bytes(&self) -> &[u8] {
        &self.prefix
    }

    pub fn data_bytes(&self) -> &[u8] {
        &self.data
    }

    /// Mutable access to the embeddable region. Its length cannot change.
    pub fn data_bytes_mut(&mut self) -> &mut [u8] {
        &mut self.data
    }

    pub fn suffix_bytes(&self) -> &[u8] {
        &self.suffix
    }

    pub fn bits_per_sample(&self) -> u16 {
        self.bits_per_sample
    }

    pub fn num_channels(&self) -> u16 {
        self.num_channels
    }

    pub fn sample_rate(&self) -> u32 {
        self.sample_rate
    }
}

pub fn parse_wav(bytes: &[u8], mode: HeaderMode) -> Result<WavAudio, WavError> {
    WavAudio::parse(bytes, mode)
}

pub fn serialize_wav(audio: &WavAudio) -> Vec<u8> {
    audio.serialize()
}
