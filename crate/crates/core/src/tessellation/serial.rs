//! JSON form of a tessellation.
//!
//! `orbits`, `distinguished` and `triangles` describe the tessellation; the
//! `darts` array carries the lifts and gluings needed to rebuild it exactly.
//! On load the descriptive fields are checked against the darts.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{Dart, Tessellation};
use crate::error::{Error, Result};
use crate::moebius::{Geodesic, MoebiusMap, OrientedGeodesic};
use crate::subgroup::Subgroup;

#[derive(Serialize, Deserialize)]
struct DartRecord {
    lift: OrientedGeodesic,
    next: usize,
    next_glue: MoebiusMap,
    opp: usize,
    opp_glue: MoebiusMap,
}

#[derive(Serialize, Deserialize)]
struct Record {
    group: Subgroup,
    orbits: Vec<Geodesic>,
    distinguished: OrientedGeodesic,
    /// edge-orbit labels around each triangle orbit
    triangles: Vec<Vec<usize>>,
    darts: Vec<DartRecord>,
    #[serde(default)]
    history: Vec<usize>,
}

impl Serialize for Tessellation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Record {
            group: (*self.group).clone(),
            orbits: self.edge_orbits(),
            distinguished: self.distinguished.clone(),
            triangles: self.triangles().iter().map(|cycle| cycle.iter().map(|&d| self.label_of[d]).collect()).collect(),
            darts: self
                .darts
                .iter()
                .map(|d| DartRecord {
                    lift: d.lift.clone(),
                    next: d.next,
                    next_glue: d.next_glue.clone(),
                    opp: d.opp,
                    opp_glue: d.opp_glue.clone(),
                })
                .collect(),
            history: self.history.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Tessellation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = Record::deserialize(d)?;
        from_record(r).map_err(serde::de::Error::custom)
    }
}

fn from_record(r: Record) -> Result<Tessellation> {
    // the stored tables are canonical; a relabelled group would not match the darts
    let darts = r
        .darts
        .into_iter()
        .map(|d| Dart { lift: d.lift, next: d.next, next_glue: d.next_glue, opp: d.opp, opp_glue: d.opp_glue })
        .collect::<Vec<_>>();
    if darts.iter().any(|d| d.next >= darts.len() || d.opp >= darts.len()) {
        return Err(Error::InvalidTessellation("dart link out of range".into()));
    }
    if darts.iter().enumerate().any(|(i, d)| darts[d.opp].opp != i) {
        return Err(Error::InvalidTessellation("opposite darts are not paired".into()));
    }
    let t = Tessellation::assemble(Arc::new(r.group), darts, r.distinguished, r.history);
    t.validate()?;
    if t.edge_orbits() != r.orbits {
        return Err(Error::InvalidTessellation("orbit list disagrees with darts".into()));
    }
    let triangles: Vec<Vec<usize>> = t.triangles().iter().map(|c| c.iter().map(|&d| t.label_of[d]).collect()).collect();
    if triangles != r.triangles {
        return Err(Error::InvalidTessellation("triangle list disagrees with darts".into()));
    }
    Ok(t)
}

impl Tessellation {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let r: Record = serde_json::from_str(text)?;
        from_record(r)
    }

    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}
