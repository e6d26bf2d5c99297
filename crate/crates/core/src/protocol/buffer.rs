//! FIFO packet buffer used by gateways during handover.

use std::collections::VecDeque;

use super::entity::EntityId;

/// One buffered downlink packet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BufferedPacket {
    pub seq: u64,
    pub size_octets: u32,
    pub enqueued_at_ms: f64,
}

/// Bounded FIFO buffer; overflow drops the oldest packet.
#[derive(Debug, Clone)]
pub struct PacketBuffer {
    pub owner: EntityId,
    capacity: usize,
    queue: VecDeque<BufferedPacket>,
    dropped: u64,
}

impl PacketBuffer {
    pub const DEFAULT_CAPACITY: usize = 256;

    pub fn new(owner: EntityId, capacity: usize) -> Self {
        PacketBuffer {
            owner,
            capacity: capacity.max(1),
            queue: VecDeque::new(),
            dropped: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.queue.len()
    }

    pub fn is_empty(&self) -> bool {
        self.queue.is_empty()
    }

    /// Packets dropped due to overflow so far.
    pub fn dropped(&self) -> u64 {
        self.dropped
    }

    /// Enqueues a packet; on overflow the oldest packet is dropped and its
    /// sequence number returned.
    pub fn enqueue(&mut self, pkt: BufferedPacket) -> Option<u64> {
        let mut evicted = None;
        if self.queue.len() == self.capacity {
            evicted = self.queue.pop_front().map(|p| p.seq);
            self.dropped += 1;
        }
        self.queue.push_back(pkt);
        evicted
    }

    /// Drains all buffered packets in FIFO order.
    pub fn release_all(&mut self) -> Vec<BufferedPacket> {
        self.queue.drain(..).collect()
    }
}
