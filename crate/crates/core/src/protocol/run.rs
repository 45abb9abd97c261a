//! Transcripts of protocol executions.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Party {
    Alice,
    Bob,
}

/// The record of a single protocol execution: the transcript bits in order,
/// and the output the protocol produced.
///
/// `bits_sent()` is by definition the transcript length; helpers that send
/// index messages push the index's `⌈log2 K⌉` binary digits so the identity
/// holds structurally.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProtocolRun<T> {
    transcript: Vec<u8>,
    pub output: T,
}

impl<T> ProtocolRun<T> {
    pub fn new(transcript: Vec<u8>, output: T) -> Self {
        debug_assert!(transcript.iter().all(|&b| b <= 1));
        ProtocolRun { transcript, output }
    }

    pub fn transcript(&self) -> &[u8] {
        &self.transcript
    }

    pub fn bits_sent(&self) -> u64 {
        self.transcript.len() as u64
    }
}

/// Bits needed to name one of `k` alternatives.
pub fn index_bits(k: usize) -> u32 {
    debug_assert!(k >= 1);
    if k <= 1 {
        0
    } else {
        (k as u64).next_power_of_two().trailing_zeros()
    }
}

/// Appends the `⌈log2 k⌉`-bit big-endian encoding of `index` to a transcript.
pub fn push_index(transcript: &mut Vec<u8>, index: usize, k: usize) {
    let width = index_bits(k);
    debug_assert!(index < k);
    for shift in (0..width).rev() {
        transcript.push(((index >> shift) & 1) as u8);
    }
}
