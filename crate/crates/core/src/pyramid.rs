//! Pyramid blocks: the data region is cut into consecutive 21-byte windows,
//! each laid out as a triangle with rows of 1..=6 bytes. Row `r` (1-based)
//! holds local indices `T(r-1)..T(r)` where `T(k) = k(k+1)/2`.
//!
//! Within a block, bytes are visited along the left edge first (the row
//! starts 0, 1, 3, 6, 10, 15) and then along each following diagonal. The
//! order is part of the stego format and must not change.

pub const BLOCK_LEN: usize = 21;
pub const ROWS: usize = 6;

pub const TRAVERSAL_ORDER: [usize; BLOCK_LEN] = [
    0, 1, 3, 6, 10, 15, // left edge
    2, 4, 7, 11, 16, //
    5, 8, 12, 17, //
    9, 13, 18, //
    14, 19, //
    20,
];

pub fn traversal_order() -> &'static [usize; BLOCK_LEN] {
    &TRAVERSAL_ORDER
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PyramidBlock {
    pub base_offset: usize,
}

impl PyramidBlock {
    /// Absolute data-region indices in visiting order.
    pub fn visit(self) -> impl Iterator<Item = usize> {
        TRAVERSAL_ORDER.iter().map(move |&l| self.base_offset + l)
    }
}

/// Length of the prefix of a `data_len`-byte region covered by whole blocks.
pub fn usable_len(data_len: usize) -> usize {
    data_len - data_len % BLOCK_LEN
}

pub fn blocks(data_len: usize) -> impl Iterator<Item = PyramidBlock> {
    (0..data_len / BLOCK_LEN).map(|i| PyramidBlock { base_offset: i * BLOCK_LEN })
}

/// Global visiting sequence over a data region: block order, then traversal order.
pub fn visit_sequence(data_len: usize) -> impl Iterator<Item = usize> {
    blocks(data_len).flat_map(PyramidBlock::visit)
}
