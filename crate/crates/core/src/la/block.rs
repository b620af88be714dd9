/// Field names of the coupled FSI unknown partitioning.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Segment {
    Solid,
    Geometry,
    FluidVelocity,
    FluidPressure,
    Interface,
}

impl Segment {
    pub fn name(self) -> &'static str {
        match self {
            Segment::Solid => "solid",
            Segment::Geometry => "geometry",
            Segment::FluidVelocity => "fluid_velocity",
            Segment::FluidPressure => "fluid_pressure",
            Segment::Interface => "interface",
        }
    }

    pub const ALL: [Segment; 5] = [
        Segment::Solid,
        Segment::Geometry,
        Segment::FluidVelocity,
        Segment::FluidPressure,
        Segment::Interface,
    ];
}

/// Named partitioning of a residual or unknown vector into field segments.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockVector {
    segments: Vec<(Segment, Vec<f64>)>,
}

impl BlockVector {
    pub fn new(segments: Vec<(Segment, Vec<f64>)>) -> Self {
        for (k, (name, _)) in segments.iter().enumerate() {
            for (other, _) in &segments[k + 1..] {
                assert_ne!(name, other, "duplicate segment {}", name.name());
            }
        }
        Self { segments }
    }

    pub fn zeros(layout: &[(Segment, usize)]) -> Self {
        Self::new(
            layout
                .iter()
                .map(|&(name, len)| (name, vec![0.0; len]))
                .collect(),
        )
    }

    pub fn layout(&self) -> Vec<(Segment, usize)> {
        self.segments
            .iter()
            .map(|(name, v)| (*name, v.len()))
            .collect()
    }

    pub fn segments(&self) -> &[(Segment, Vec<f64>)] {
        &self.segments
    }

    pub fn get(&self, name: Segment) -> &[f64] {
        self.segments
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, v)| v.as_slice())
            .unwrap_or_else(|| panic!("missing segment {}", name.name()))
    }

    pub fn get_mut(&mut self, name: Segment) -> &mut Vec<f64> {
        self.segments
            .iter_mut()
            .find(|(n, _)| *n == name)
            .map(|(_, v)| v)
            .unwrap_or_else(|| panic!("missing segment {}", name.name()))
    }

    pub fn total_len(&self) -> usize {
        self.segments.iter().map(|(_, v)| v.len()).sum()
    }

    /// Concatenates the segments in their stored order.
    pub fn to_flat(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.total_len());
        for (_, v) in &self.segments {
            out.extend_from_slice(v);
        }
        out
    }

    pub fn from_flat(layout: &[(Segment, usize)], flat: &[f64]) -> Self {
        let total: usize = layout.iter().map(|(_, n)| n).sum();
        assert_eq!(flat.len(), total, "from_flat: length mismatch");
        let mut segments = Vec::with_capacity(layout.len());
        let mut offset = 0;
        for &(name, len) in layout {
            segments.push((name, flat[offset..offset + len].to_vec()));
            offset += len;
        }
        Self::new(segments)
    }

    pub fn norm(&self) -> f64 {
        self.segments
            .iter()
            .flat_map(|(_, v)| v.iter())
            .map(|v| v * v)
            .sum::<f64>()
            .sqrt()
    }
}
