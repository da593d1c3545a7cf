//! MSB-first bit reader/writer over byte buffers.

/// Reads bits from a byte slice, most significant bit of each byte first.
#[derive(Debug, Clone)]
pub struct BitReader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> BitReader<'a> {
    pub fn new(bytes: &'a [u8]) -> Self {
        BitReader { bytes, pos: 0 }
    }

    pub fn remaining(&self) -> usize {
        self.bytes.len() * 8 - self.pos
    }

    /// Reads up to `n` (≤ 8) bits. Returns the bits right-aligned and how many were read.
    pub fn read(&mut self, n: u8) -> (u8, u8) {
        debug_assert!(n <= 8);
        let take = (n as usize).min(self.remaining()) as u8;
        if take == 0 {
            return (0, 0);
        }
        let i = self.pos / 8;
        let hi = u16::from(self.bytes[i]) << 8;
        let lo = self.bytes.get(i + 1).map_or(0, |&b| u16::from(b));
        let window = (hi | lo) << (self.pos % 8);
        self.pos += usize::from(take);
        ((window >> (16 - take)) as u8, take)
    }
}

/// Accumulates bits MSB-first into bytes.
#[derive(Debug, Clone, Default)]
pub struct BitWriter {
    bytes: Vec<u8>,
    acc: u8,
    fill: u8,
}

impl BitWriter {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends the low `n` bits of `value`, highest first.
    pub fn write(&mut self, value: u8, n: u8) {
        debug_assert!(n <= 8);
        if n == 0 {
            return;
        }
        let bits = u16::from(value) & ((1u16 << n) - 1);
        let acc = (u16::from(self.acc) << n) | bits;
        let fill = self.fill + n;
        if fill >= 8 {
            self.bytes.push((acc >> (fill - 8)) as u8);
            self.fill = fill - 8;
        } else {
            self.fill = fill;
        }
        self.acc = (acc & ((1u16 << self.fill) - 1)) as u8;
    }

    pub fn bit_len(&self) -> usize {
        self.bytes.len() * 8 + self.fill as usize
    }

    /// Complete bytes written so far.
    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }

    /// Finishes, zero-padding a trailing partial byte.
    pub fn into_bytes(mut self) -> Vec<u8> {
        if self.fill > 0 {
            self.bytes.push(self.acc << (8 - self.fill));
        }
        self.bytes
    }
}
