//! Named anatomical landmark points in physical RAS millimeters.

use super::VolumeError;
use alloc::string::String;
use alloc::vec::Vec;

/// One named point, e.g. the paper-style motor cortex "dot".
#[derive(Debug, Clone, PartialEq)]
pub struct Landmark {
    pub name: String,
    /// Physical RAS coordinates in mm.
    pub point: [f64; 3],
}

impl Landmark {
    pub fn new(name: impl Into<String>, point: [f64; 3]) -> Self {
        Self { name: name.into(), point }
    }
}

/// An ordered set of landmarks with unique names and finite coordinates.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LandmarkSet {
    landmarks: Vec<Landmark>,
}

impl LandmarkSet {
    pub fn new(landmarks: Vec<Landmark>) -> Result<Self, VolumeError> {
        for (i, lm) in landmarks.iter().enumerate() {
            if lm.point.iter().any(|c| !c.is_finite()) {
                return Err(VolumeError::NonFiniteLandmark(lm.name.clone()));
            }
            if landmarks[..i].iter().any(|other| other.name == lm.name) {
                return Err(VolumeError::DuplicateLandmark(lm.name.clone()));
            }
        }
        Ok(Self { landmarks })
    }

    pub fn len(&self) -> usize {
        self.landmarks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.landmarks.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Landmark> {
        self.landmarks.iter()
    }

    pub fn get(&self, name: &str) -> Option<&Landmark> {
        self.landmarks.iter().find(|lm| lm.name == name)
    }
}

impl<'a> IntoIterator for &'a LandmarkSet {
    type Item = &'a Landmark;
    type IntoIter = core::slice::Iter<'a, Landmark>;

    fn into_iter(self) -> Self::IntoIter {
        self.landmarks.iter()
    }
}
