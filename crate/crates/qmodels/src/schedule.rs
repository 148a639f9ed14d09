/// Linear ramp v(t) = v0 + (v1 - v0) t / duration.
///
/// Every driving protocol in the toolkit is linear in time, so the ramp and
/// its rate are the only schedule primitives needed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearRamp {
    pub v0: f64,
    pub v1: f64,
    pub duration: f64,
}

impl LinearRamp {
    pub fn new(v0: f64, v1: f64, duration: f64) -> Self {
        assert!(duration > 0.0, "ramp duration must be positive");
        Self { v0, v1, duration }
    }

    pub fn value(&self, t: f64) -> f64 {
        self.v0 + (self.v1 - self.v0) * t / self.duration
    }

    pub fn rate(&self) -> f64 {
        (self.v1 - self.v0) / self.duration
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints_and_rate() {
        let r = LinearRamp::new(-5.0, 5.0, 2.0);
        assert_eq!(r.value(0.0), -5.0);
        assert_eq!(r.value(2.0), 5.0);
        assert_eq!(r.rate(), 5.0);
    }
}
