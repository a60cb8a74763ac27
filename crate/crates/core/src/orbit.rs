use serde::{Deserialize, Serialize};

/// A partition of `0..len` into orbits.
///
/// Orbits are numbered in order of their least member, which is also the
/// stored representative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitPartition {
    pub orbit_id: Vec<u32>,
    pub reps: Vec<u32>,
    pub sizes: Vec<u32>,
}

impl OrbitPartition {
    /// Breadth-first orbits of the action generated by `step`, which must
    /// call its sink with every image of a point under each generator.
    pub fn from_generators<F>(len: usize, mut step: F) -> Self
    where
        F: FnMut(u32, &mut dyn FnMut(u32)),
    {
        let mut orbit_id = vec![u32::MAX; len];
        let mut reps = Vec::new();
        let mut sizes = Vec::new();
        let mut queue: Vec<u32> = Vec::new();
        for start in 0..len as u32 {
            if orbit_id[start as usize] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(start);
            orbit_id[start as usize] = id;
            queue.clear();
            queue.push(start);
            let mut head = 0;
            while head < queue.len() {
                let p = queue[head];
                head += 1;
                step(p, &mut |q| {
                    if orbit_id[q as usize] == u32::MAX {
                        orbit_id[q as usize] = id;
                        queue.push(q);
                    }
                });
            }
            sizes.push(queue.len() as u32);
        }
        OrbitPartition {
            orbit_id,
            reps,
            sizes,
        }
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn orbit_of(&self, point: u32) -> u32 {
        self.orbit_id[point as usize]
    }

    pub fn members(&self, orbit: u32) -> Vec<u32> {
        self.orbit_id
            .iter()
            .enumerate()
            .filter(|&(_, &o)| o == orbit)
            .map(|(p, _)| p as u32)
            .collect()
    }

    pub fn same_orbit(&self, a: u32, b: u32) -> bool {
        self.orbit_id[a as usize] == self.orbit_id[b as usize]
    }
}
