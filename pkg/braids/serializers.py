from rest_framework import serializers

from qarith.exceptions import DomainError

from .burau import determinant
from .knot_table import KnotEntry
from .words import BraidWord, closure_components


class KnotEntrySerializer(serializers.Serializer):
    name = serializers.CharField(max_length=64)
    strands = serializers.IntegerField(min_value=1)
    word = serializers.ListField(child=serializers.IntegerField(), allow_empty=True)
    reference_volume = serializers.FloatField(min_value=0.0, allow_null=True)
    reference_determinant = serializers.IntegerField(min_value=1, allow_null=True)
    source = serializers.CharField()
    summands = serializers.ListField(child=serializers.CharField(), required=False, default=list)

    def validate(self, attrs):
        try:
            braid = BraidWord(attrs['strands'], tuple(attrs['word']))
        except DomainError as exc:
            raise serializers.ValidationError({'word': str(exc)})

        components = closure_components(braid)
        if components != 1:
            raise serializers.ValidationError(
                {'word': f"Closure has {components} components; the table holds knots only."}
            )

        expected = attrs.get('reference_determinant')
        if expected is not None and determinant(braid) != expected:
            raise serializers.ValidationError(
                {'reference_determinant': f"Braid closure has determinant {determinant(braid)}, not {expected}."}
            )

        attrs['braid'] = braid
        return attrs

    def create(self, validated_data):
        return KnotEntry(
            name=validated_data['name'],
            braid=validated_data['braid'],
            reference_volume=validated_data['reference_volume'],
            reference_determinant=validated_data['reference_determinant'],
            source=validated_data['source'],
            summands=tuple(validated_data.get('summands', ())),
        )


class KnotEntryOutputSerializer(serializers.Serializer):
    name = serializers.CharField()
    braid = serializers.CharField()
    reference_volume = serializers.FloatField(allow_null=True)
    reference_determinant = serializers.IntegerField(allow_null=True)
    source = serializers.CharField()
    summands = serializers.ListField(child=serializers.CharField())
