from .coeff_map_serializers import CoeffEntrySerializer, CoeffMapSerializer

__all__ = ["CoeffEntrySerializer", "CoeffMapSerializer"]
