//! Audio steganography for uncompressed PCM WAV files.
//!
//! Secrets are framed and written into the low bits of the data-region bytes.
//! The number of bits per byte depends on the byte's value ([`range`]) and the
//! order in which bytes are visited is fixed by 21-byte pyramid blocks
//! ([`pyramid`]). The [`metrics`] module measures how much a stego file
//! deviates from its cover.
//!
//! ```
//! use pyramid_stego::{codec, RangeTable, WavAudio};
//!
//! let cover = WavAudio::new_pcm(8, 1, 8000, vec![200; 2100]);
//! let table = RangeTable::default_table();
//! let stego = codec::embed(&cover, b"hello", &table).unwrap();
//! assert_eq!(codec::extract(&stego, &table).unwrap(), b"hello");
//! ```

pub mod bits;
pub mod codec;
pub mod metrics;
pub mod pyramid;
pub mod range;
pub mod wav;

pub use codec::{CapacityReport, CodecError, Method};
pub use metrics::{MetricsError, Psnr, QualityReport};
pub use range::{RangeEntry, RangeTable, TableError};
pub use wav::{HeaderMode, WavAudio, WavError};
