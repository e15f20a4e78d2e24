"""
Incremental Edge-to-Color Matching
==================================

During a rainbow search every placed edge must eventually receive its own
color. ``ColorMatcher`` keeps a matching that saturates the placed edges
("items") and is updated with one augmenting-path search per push; pops
undo the last push. Items are pushed and popped in stack order.
"""

from typing import List

from ..core.collection import bits


class ColorMatcher:
    """
    Matching between items (each with a bitmask of admissible colors) and
    colors, kept saturating on the items.
    """

    def __init__(self, colors: int):
        self.colors = colors
        self.item_masks: List[int] = []
        self.item_color: List[int] = []
        self.color_item: List[int] = [-1] * colors

    def __len__(self) -> int:
        return len(self.item_masks)

    def _augment(self, item: int, visited: List[int]) -> bool:
        for c in bits(self.item_masks[item]):
            if (visited[0] >> c) & 1:
                continue
            visited[0] |= 1 << c
            holder = self.color_item[c]
            if holder < 0 or self._augment(holder, visited):
                self.color_item[c] = item
                self.item_color[item] = c
                return True
        return False

    def push(self, mask: int) -> bool:
        """Add an item; returns False (and leaves state unchanged) when the
        items can no longer all be matched"""
        self.item_masks.append(mask)
        self.item_color.append(-1)
        if self._augment(len(self.item_masks) - 1, [0]):
            return True
        self.item_masks.pop()
        self.item_color.pop()
        return False

    def pop(self) -> None:
        self.item_masks.pop()
        c = self.item_color.pop()
        self.color_item[c] = -1

    def matched_colors(self) -> int:
        mask = 0
        for c in self.item_color:
            mask |= 1 << c
        return mask

    def can_cover(self, required: int) -> bool:
        """
        Whether some matching covers every color in ``required``.

        Combined with the saturating matching already held, this implies a
        single matching doing both (Mendelsohn-Dulmage).
        """
        missing = required & ~self.matched_colors()
        if not missing:
            return True
        if required.bit_count() > len(self.item_masks):
            return False

        holder_of_item = [-1] * len(self.item_masks)

        def augment(color: int, seen: List[int]) -> bool:
            for i, mask in enumerate(self.item_masks):
                if not (mask >> color) & 1 or (seen[0] >> i) & 1:
                    continue
                seen[0] |= 1 << i
                if holder_of_item[i] < 0 or augment(holder_of_item[i], seen):
                    holder_of_item[i] = color
                    return True
            return False

        return all(augment(c, [0]) for c in bits(required))


__all__ = ["ColorMatcher"]
