"""
Braid words "n: g1 g2 ...": letter g stands for the generator sigma_|g|
with crossing sign sign(g).
"""

from dataclasses import dataclass
from typing import Tuple

from qarith.exceptions import BraidParseError, DomainError


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'letters', tuple(int(letter) for letter in self.letters))
        if self.strands < 1:
            raise DomainError(f"A braid needs at least one strand, got {self.strands}")
        for letter in self.letters:
            if letter == 0 or abs(letter) >= self.strands:
                raise DomainError(f"Letter {letter} is not a generator of the {self.strands}-strand braid group")

    def __str__(self):
        return format_braid(self)

    def __len__(self):
        return len(self.letters)


def parse_braid(text):
    """Parse "n: g1 g2 ..."; errors carry the offending token position (0 is the strand count)."""
    if not isinstance(text, str) or ':' not in text:
        raise BraidParseError("Expected 'n: g1 g2 ...'", text, 0)
    head, _, body = text.partition(':')
    try:
        strands = int(head.strip())
    except ValueError:
        raise BraidParseError(f"Strand count {head.strip()!r} is not an integer", text, 0)
    if strands < 1:
        raise BraidParseError('Strand count must be at least 1', text, 0)

    letters = []
    for position, token in enumerate(body.split(), start=1):
        try:
            letter = int(token)
        except ValueError:
            raise BraidParseError(f"Letter {token!r} is not an integer", text, position)
        if letter == 0:
            raise BraidParseError('Zero is not a generator', text, position)
        if abs(letter) >= strands:
            raise BraidParseError(f"Generator {abs(letter)} needs more than {strands} strands", text, position)
        letters.append(letter)
    return BraidWord(strands, tuple(letters))


def format_braid(word):
    return ' '.join([f'{word.strands}:', *map(str, word.letters)])


def writhe(word):
    return sum(1 if letter > 0 else -1 for letter in word.letters)


def closure_permutation(word):
    """Where each starting position ends after the word, positions 0-based"""
    positions = list(range(word.strands))
    for letter in word.letters:
        i = abs(letter) - 1
        positions[i], positions[i + 1] = positions[i + 1], positions[i]
    # positions[k] is the strand now at k; invert to follow each strand
    result = [0] * word.strands
    for end, start in enumerate(positions):
        result[start] = end
    return result


def closure_components(word):
    permutation = closure_permutation(word)
    seen = [False] * word.strands
    cycles = 0
    for start in range(word.strands):
        if seen[start]:
            continue
        cycles += 1
        current = start
        while not seen[current]:
            seen[current] = True
            current = permutation[current]
    return cycles


def is_knot(word):
    return closure_components(word) == 1


def connect_sum(first, second):
    """Closure is the connected sum: second's generators shift up by first.strands - 1."""
    for word in (first, second):
        if not is_knot(word):
            raise DomainError(f"Connected sums are taken of knots; '{word}' closes to a link")
    shift = first.strands - 1
    shifted = tuple(letter + shift if letter > 0 else letter - shift for letter in second.letters)
    return BraidWord(first.strands + second.strands - 1, first.letters + shifted)


def inverse(word):
    return BraidWord(word.strands, tuple(-letter for letter in reversed(word.letters)))


def conjugate(word, letter):
    """letter . word . letter^-1, a Markov move of the first kind"""
    return BraidWord(word.strands, (letter, *word.letters, -letter))


def stabilize(word, sign=1):
    """Add a strand and a final crossing with it, a Markov move of the second kind"""
    if sign not in (1, -1):
        raise DomainError(f"Stabilization sign must be +1 or -1, got {sign}")
    return BraidWord(word.strands + 1, (*word.letters, sign * word.strands))
