//! Primitive-step instrumentation.
//!
//! Query paths that claim constant time take a `&mut impl Probe` and call
//! [`Probe::step`] once per primitive operation (a word read, a table
//! lookup, a comparison or an add). Passing [`NoProbe`] compiles the
//! bookkeeping away.

pub trait Probe {
    fn step(&mut self);

    #[inline]
    fn steps(&mut self, k: u32) {
        for _ in 0..k {
            self.step();
        }
    }
}

/// Probe that records nothing.
#[derive(Debug, Default, Clone, Copy)]
pub struct NoProbe;

impl Probe for NoProbe {
    #[inline(always)]
    fn step(&mut self) {}

    #[inline(always)]
    fn steps(&mut self, _k: u32) {}
}

/// Probe that counts steps.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct StepCounter(pub u64);

impl StepCounter {
    pub fn new() -> Self {
        StepCounter(0)
    }

    pub fn count(&self) -> u64 {
        self.0
    }
}

impl Probe for StepCounter {
    #[inline]
    fn step(&mut self) {
        self.0 += 1;
    }

    #[inline]
    fn steps(&mut self, k: u32) {
        self.0 += u64::from(k);
    }
}
