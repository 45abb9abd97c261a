//! Query-to-communication adapter.
//!
//! A randomized query algorithm over a ±1 string can be run distributively
//! when the string is the entrywise product `f · g` of the parties' inputs:
//! each oracle query at position `i` is replaced by Alice announcing `f_i`
//! and Bob announcing `g_i`, 2 bits total. The replay is bit-for-bit: with
//! the same generator, the distributed run issues the same queries and
//! produces the same output as the direct run on the product table.

use crate::math::sign::SignVector;
use crate::math::MathError;
use crate::protocol::run::ProtocolRun;
use rand::Rng;

/// A randomized algorithm that only touches its input through positional
/// queries answered by ±1 values.
pub trait QueryAlgorithm {
    type Output;

    fn run<R: Rng + ?Sized>(
        &self,
        oracle: &mut dyn FnMut(usize) -> i8,
        rng: &mut R,
    ) -> Self::Output;
}

/// Runs the algorithm directly against a table; returns the output and the
/// query count.
pub fn run_direct<A: QueryAlgorithm, R: Rng + ?Sized>(
    algorithm: &A,
    table: &SignVector,
    rng: &mut R,
) -> (A::Output, u64) {
    let mut queries = 0u64;
    let output = {
        let mut oracle = |i: usize| {
            queries += 1;
            table.get(i)
        };
        algorithm.run(&mut oracle, rng)
    };
    (output, queries)
}

/// Runs the algorithm as a two-party protocol over `h = f · g`.
///
/// Transcript: per query, Alice's bit then Bob's bit (sign `-1` encodes as
/// bit 1), so `bits_sent = 2 × queries` structurally.
pub fn run_distributed<A: QueryAlgorithm, R: Rng + ?Sized>(
    algorithm: &A,
    f: &SignVector,
    g: &SignVector,
    rng: &mut R,
) -> Result<ProtocolRun<A::Output>, MathError> {
    if f.len() != g.len() {
        return Err(MathError::DimensionMismatch {
            expected: f.len(),
            actual: g.len(),
        });
    }
    let mut transcript = Vec::new();
    let output = {
        let mut oracle = |i: usize| {
            let (fi, gi) = (f.get(i), g.get(i));
            transcript.push(if fi == -1 { 1 } else { 0 });
            transcript.push(if gi == -1 { 1 } else { 0 });
            fi * gi
        };
        algorithm.run(&mut oracle, rng)
    };
    Ok(ProtocolRun::new(transcript, output))
}
