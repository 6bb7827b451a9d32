from rest_framework import serializers


class ComplexField(serializers.Field):
    """A complex scalar as [re, im]"""

    def to_representation(self, value):
        return [float(value.real), float(value.imag)]

    def to_internal_value(self, data):
        if not isinstance(data, (list, tuple)) or len(data) != 2:
            raise serializers.ValidationError('Expected [re, im].')
        try:
            return complex(float(data[0]), float(data[1]))
        except (TypeError, ValueError):
            raise serializers.ValidationError('Real and imaginary parts must be numbers.')


class DeviationReportSerializer(serializers.Serializer):
    name = serializers.CharField()
    N = serializers.IntegerField()
    max_deviation = serializers.FloatField()
    tolerance = serializers.FloatField()
    passed = serializers.BooleanField()
    detail = serializers.CharField(allow_blank=True)

    def to_representation(self, instance):
        data = super().to_representation(instance)
        data['pass'] = data.pop('passed')
        return data
