from rest_framework import serializers

from qarith.serializers import ComplexField


class TangleValueSerializer(serializers.Serializer):
    braid = serializers.CharField()
    N = serializers.IntegerField()
    operator = serializers.CharField(source='kind')
    value = ComplexField(source='scalar')
    scalarness = serializers.FloatField(source='scalarness_deviation')
    writhe = serializers.IntegerField()
    components = serializers.IntegerField()


class InvariantPairSerializer(serializers.Serializer):
    """S_J and S_K values of one braid at one N side by side"""
    braid = serializers.CharField(source='jones.braid')
    N = serializers.IntegerField(source='jones.N')
    jones = serializers.SerializerMethodField()
    kashaev = serializers.SerializerMethodField()
    difference = serializers.SerializerMethodField()
    writhe = serializers.IntegerField(source='jones.writhe')
    components = serializers.IntegerField(source='jones.components')

    def _side(self, value):
        return {
            'value': ComplexField().to_representation(value.scalar),
            'scalarness': float(value.scalarness_deviation),
        }

    def get_jones(self, obj):
        return self._side(obj['jones'])

    def get_kashaev(self, obj):
        return self._side(obj['kashaev'])

    def get_difference(self, obj):
        return float(abs(complex(obj['jones'].scalar) - complex(obj['kashaev'].scalar)))
