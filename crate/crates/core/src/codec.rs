//! Embedding and extraction of framed payloads.
//!
//! The secret is wrapped as `"PYR1" ++ u32-LE length ++ secret` and streamed
//! MSB-first into the data region. With [`Method::Pyramid`] the bytes are
//! visited block by block in pyramid order and each byte takes as many bits
//! as its range depth allows. [`Method::PlainLsb`] is the classic baseline:
//! one bit per byte in file order.

use thiserror::Error;

use crate::bits::{BitReader, BitWriter};
use crate::pyramid;
use crate::range::RangeTable;
use crate::wav::WavAudio;

pub const FRAME_MAGIC: [u8; 4] = *b"PYR1";
pub const FRAME_HEADER_LEN: usize = 8;
const HEADER_BITS: u64 = FRAME_HEADER_LEN as u64 * 8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CodecError {
    #[error("payload needs {required_bits} bits but the cover only holds {available_bits}")]
    CapacityExceeded { required_bits: u64, available_bits: u64 },
    #[error("no payload found (bad magic {found:02x?})")]
    BadMagic { found: [u8; 4] },
    #[error("payload truncated: needed {needed_bits} bits, stream ended after {available_bits}")]
    Truncated { needed_bits: u64, available_bits: u64 },
    #[error("secret of {0} bytes does not fit a 32-bit length field")]
    SecretTooLarge(usize),
}

/// Serializes the frame: magic, little-endian length, secret.
pub fn frame(secret: &[u8]) -> Result<Vec<u8>, CodecError> {
    let len = u32::try_from(secret.len()).map_err(|_| CodecError::SecretTooLarge(secret.len()))?;
    let mut out = Vec::with_capacity(FRAME_HEADER_LEN + secret.len());
    out.extend_from_slice(&FRAME_MAGIC);
    out.extend_from_slice(&len.to_le_bytes());
    out.extend_from_slice(secret);
    Ok(out)
}

/// Total bits a framed secret of `secret_len` bytes occupies.
pub fn frame_bits(secret_len: usize) -> u64 {
    (FRAME_HEADER_LEN as u64 + secret_len as u64) * 8
}

/// Largest secret (in bytes) that fits in `capacity_bits`, after the frame header.
pub fn net_capacity_bytes(capacity_bits: u64) -> u64 {
    (capacity_bits / 8).saturating_sub(FRAME_HEADER_LEN as u64)
}

/// Writes `bits` (right-aligned, `k` of them) into the low `k` bits of `b`.
pub fn embed_byte(b: u8, bits: u8, k: u8) -> u8 {
    crate::range::replace_low_bits(b, bits, k)
}

/// Writes only the top `n` of the `k` low positions, leaving the rest of `b` alone.
fn embed_partial(b: u8, bits: u8, n: u8, k: u8) -> u8 {
    if n == 0 {
        return b;
    }
    let shift = k - n;
    let mask = (((1u16 << n) - 1) as u8) << shift;
    (b & !mask) | ((bits << shift) & mask)
}

/// Visiting order over the data region.
enum Schedule {
    Pyramid { next_block: usize, slot: usize, blocks: usize },
    Sequential(std::ops::Range<usize>),
}

impl Iterator for Schedule {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        match self {
            Schedule::Pyramid { next_block, slot, blocks } => {
                if *next_block >= *blocks {
                    return None;
                }
                let idx = *next_block * pyramid::BLOCK_LEN + pyramid::TRAVERSAL_ORDER[*slot];
                *slot += 1;
                if *slot == pyramid::BLOCK_LEN {
                    *slot = 0;
                    *next_block += 1;
                }
                Some(idx)
            }
            Schedule::Sequential(r) => r.next(),
        }
    }
}

/// How payload bits are laid out over the data region.
#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Method {
    Pyramid(RangeTable),
    PlainLsb,
}

impl Method {
    /// Bits this method stores in a byte with value `b`.
    #[inline]
    fn depth(&self, b: u8) -> u8 {
        match self {
            Method::Pyramid(t) => t.classify(b),
            Method::PlainLsb => 1,
        }
    }

    fn schedule(&self, data_len: usize) -> Schedule {
        match self {
            Method::Pyramid(_) => Schedule::Pyramid { next_block: 0, slot: 0, blocks: data_len / pyramid::BLOCK_LEN },
            Method::PlainLsb => Schedule::Sequential(0..data_len),
        }
    }

    /// Gross capacity of a data region in bits.
    pub fn capacity_bits(&self, data: &[u8]) -> u64 {
        match self {
            Method::Pyramid(t) => t.block_capacity_bits(data),
            Method::PlainLsb => data.len() as u64,
        }
    }

    pub fn embed(&self, cover: &WavAudio, secret: &[u8]) -> Result<WavAudio, CodecError> {
        let payload = frame(secret)?;
        let required_bits = frame_bits(secret.len());
        let available_bits = self.capacity_bits(cover.data_bytes());
        if required_bits > available_bits {
            return Err(CodecError::CapacityExceeded { required_bits, available_bits });
        }

        let mut stego = cover.clone();
        let data = stego.data_bytes_mut();
        let mut reader = BitReader::new(&payload);
        for idx in self.schedule(data.len()) {
            if reader.remaining() == 0 {
                break;
            }
            let k = self.depth(data[idx]);
            if k == 0 {
                continue;
            }
            let (bits, n) = reader.read(k);
            data[idx] = embed_partial(data[idx], bits, n, k);
        }
        debug_assert_eq!(reader.remaining(), 0);
        Ok(stego)
    }

    pub fn extract(&self, stego: &WavAudio) -> Result<Vec<u8>, CodecError> {
        let data = stego.data_bytes();
        let mut out = BitWriter::new();
        let mut needed = HEADER_BITS;
        let mut header_checked = false;

        for idx in self.schedule(data.len()) {
            let b = data[idx];
            let k = self.depth(b);
            if k == 0 {
                continue;
            }
            // Once the length is known, never read past the end of the frame.
            let n = if header_checked {
                (needed - out.bit_len() as u64).min(u64::from(k)) as u8
            } else {
                k
            };
            let field = b & (((1u16 << k) - 1) as u8);
            out.write(field >> (k - n), n);

            if !header_checked && out.bit_len() as u64 >= HEADER_BITS {
                let head = out.bytes();
                let magic = [head[0], head[1], head[2], head[3]];
                if magic != FRAME_MAGIC {
                    return Err(CodecError::BadMagic { found: magic });
                }
                let len = u32::from_le_bytes([head[4], head[5], head[6], head[7]]);
                needed = frame_bits(len as usize);
                header_checked = true;
            }
            if header_checked && out.bit_len() as u64 >= needed {
                let end = (needed / 8) as usize;
                let bytes = out.into_bytes();
                return Ok(bytes[FRAME_HEADER_LEN..end].to_vec());
            }
        }

        Err(CodecError::Truncated {
            needed_bits: needed,
            available_bits: out.bit_len() as u64,
        })
    }
}

/// Capacity figures for one cover under one method.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct CapacityReport {
    pub gross_bits: u64,
    pub net_bytes: u64,
    pub cover_file_bytes: u64,
    pub net_percent: f64,
}

impl CapacityReport {
    pub fn new(method: &Method, cover: &WavAudio) -> Self {
        let gross_bits = method.capacity_bits(cover.data_bytes());
        let net_bytes = net_capacity_bytes(gross_bits);
        let cover_file_bytes = cover.total_len() as u64;
        CapacityReport {
            gross_bits,
            net_bytes,
            cover_file_bytes,
            net_percent: 100.0 * net_bytes as f64 / cover_file_bytes as f64,
        }
    }
}

impl std::fmt::Display for CapacityReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "capacity: {} bits ({} bytes gross)", self.gross_bits, self.gross_bits / 8)?;
        writeln!(
            f,
            "usable secret: {} bytes after {}-byte frame header",
            self.net_bytes, FRAME_HEADER_LEN
        )?;
        writeln!(
            f,
            "payload: {:.2}% of {}-byte cover file",
            self.net_percent, self.cover_file_bytes
        )
    }
}

pub fn embed(cover: &WavAudio, secret: &[u8], table: &RangeTable) -> Result<WavAudio, CodecError> {
    Method::Pyramid(table.clone()).embed(cover, secret)
}

pub fn extract(stego: &WavAudio, table: &RangeTable) -> Result<Vec<u8>, CodecError> {
    Method::Pyramid(table.clone()).extract(stego)
}

pub fn embed_plain_lsb(cover: &WavAudio, secret: &[u8]) -> Result<WavAudio, CodecError> {
    Method::PlainLsb.embed(cover, secret)
}

pub fn extract_plain_lsb(stego: &WavAudio) -> Result<Vec<u8>, CodecError> {
    Method::PlainLsb.extract(stego)
}
