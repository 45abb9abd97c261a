//! Reduction from the double-output task to single-party Fourier sampling:
//! after the parties obtain `(s, t)`, Alice sends `s` (n bits) and Bob
//! outputs `s ⊕ t`. The XOR pushforward can only shrink statistical
//! distance, so an ε-accurate double-output source yields an ε-accurate
//! sampler at `n` extra bits.

use crate::protocol::run::ProtocolRun;

/// Applies the reduction to one sampled pair; the transcript carries the `n`
/// bits of `s`.
pub fn ddfs_to_dfs_reduction(pair: (u64, u64), qubits: usize) -> ProtocolRun<u64> {
    let (s, t) = pair;
    let transcript = (0..qubits)
        .rev()
        .map(|k| ((s >> k) & 1) as u8)
        .collect();
    ProtocolRun::new(transcript, s ^ t)
}
