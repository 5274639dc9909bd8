from rest_framework import serializers

from hecke.coeff_maps import FAMILIES, CoeffMap, build_family


class CoeffEntrySerializer(serializers.Serializer):
    """One support point {re, im, a_re, a_im} of a coefficient map."""

    re = serializers.IntegerField()
    im = serializers.IntegerField()
    a_re = serializers.FloatField()
    a_im = serializers.FloatField(required=False, default=0.0)

    def validate(self, attrs):
        if attrs["re"] == 0 and attrs["im"] == 0:
            raise serializers.ValidationError("Support points must be nonzero")
        return attrs


class CoeffMapSerializer(serializers.Serializer):
    """
    Serializer for coefficient maps read from experiment configurations.

    Either an explicit support list or a named family is accepted:
    {
        "norm_bound": 25,
        "entries": [{"re": 1, "im": 0, "a_re": 1.0, "a_im": 0.0}, ...]
    }
    {
        "norm_bound": 25,
        "family": "random-phase"
    }
    """

    norm_bound = serializers.IntegerField(min_value=1)
    entries = CoeffEntrySerializer(many=True, required=False)
    family = serializers.ChoiceField(choices=FAMILIES, required=False)

    def validate(self, attrs):
        if ("entries" in attrs) == ("family" in attrs):
            raise serializers.ValidationError("Give exactly one of 'entries' or 'family'")
        bound = attrs["norm_bound"]
        for entry in attrs.get("entries", []):
            if entry["re"] ** 2 + entry["im"] ** 2 > bound:
                raise serializers.ValidationError(
                    f"Entry ({entry['re']}, {entry['im']}) exceeds norm bound {bound}"
                )
        return attrs

    def build(self, seed: int = 0) -> CoeffMap:
        """CoeffMap from validated data."""
        data = self.validated_data
        if "family" in data:
            return build_family(data["family"], data["norm_bound"], seed=seed)
        return CoeffMap.from_items(
            data["norm_bound"],
            (
                ((e["re"], e["im"]), complex(e["a_re"], e["a_im"]))
                for e in data.get("entries", [])
            ),
        )

    @staticmethod
    def dump(coeffs: CoeffMap) -> dict:
        return {"norm_bound": coeffs.norm_bound, "entries": coeffs.as_records()}
