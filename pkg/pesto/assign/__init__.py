from pesto.assign.hungarian import hungarian, assignment_cost
from pesto.assign.encoding import (
    EncodingTable, identity_encoding, extend_encoding, encode_predictions)


__all__ = [
    hungarian, assignment_cost,
    EncodingTable, identity_encoding, extend_encoding, encode_predictions,
]
