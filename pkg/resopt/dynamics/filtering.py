# License: BSD 3 clause
"""
The local filter applied by every regular node before its consensus step.
"""

from collections import namedtuple

__all__ = ['FilterResult', 'lf_filter']

FilterResult = namedtuple('FilterResult', ['retained', 'removed_above', 'removed_below'])


def lf_filter(own_value, own_id, incoming, F):
    """
    Remove up to ``F`` of the largest values strictly above ``own_value``
    and up to ``F`` of the smallest values strictly below it. Values equal
    to ``own_value`` are always kept; among equal extreme values the smaller
    sender id is removed first.

    Parameters
    ----------
    own_value : float
        The filtering node's current state.
    own_id : int
        The filtering node's id; a message from itself is ignored.
    incoming : iterable of (int, float)
        ``(sender, value)`` pairs, one per in-edge.
    F : int
        The filtering parameter.

    Returns
    -------
    result : FilterResult
        Frozensets of retained, removed-above and removed-below senders.

    Raises
    ------
    ValueError
        If ``F`` is negative.
    """
    if F < 0:
        raise ValueError('F must be non-negative, got {}'.format(F))
    incoming = [(sender, value) for sender, value in incoming if sender != own_id]
    above = sorted(((sender, value) for sender, value in incoming if value > own_value),
                   key=lambda item: (-item[1], item[0]))[:F]
    below = sorted(((sender, value) for sender, value in incoming if value < own_value),
                   key=lambda item: (item[1], item[0]))[:F]
    removed_above = frozenset(sender for sender, _ in above)
    removed_below = frozenset(sender for sender, _ in below)
    retained = frozenset(sender for sender, _ in incoming
                         if sender not in removed_above and sender not in removed_below)
    return FilterResult(retained, removed_above, removed_below)
