#Queue that can be read again from its first entry. Every operation is O(1).

from typing import List, Optional, Tuple

Entry = Tuple[int, List[int]]       # (edge id, predecessor states)


class RestartableQueue:
    """
    Append-only sequence of (edge, states) entries with a read cursor.

    advance() moves past the head, restart() rewinds to the first entry.
    Entries are never removed, so a queue can be replayed any number of times.
    """

    __slots__ = ('entries', 'cursor')

    def __init__(self):
        self.entries: List[Entry] = []
        self.cursor = 0

    def enqueue(self, edge: int, states: List[int]):
        self.entries.append((edge, states))

    def is_empty(self) -> bool:
        """True when the cursor is past the last entry"""
        return self.cursor >= len(self.entries)

    def peek(self) -> Optional[Entry]:
        if self.cursor >= len(self.entries):
            return None
        return self.entries[self.cursor]

    def advance(self):
        if self.cursor < len(self.entries):
            self.cursor += 1

    def restart(self):
        self.cursor = 0

    @property
    def at_start(self) -> bool:
        return self.cursor == 0

    def __len__(self) -> int:
        return len(self.entries)

    def __repr__(self) -> str:
        return f"RestartableQueue({self.entries}, cursor={self.cursor})"
