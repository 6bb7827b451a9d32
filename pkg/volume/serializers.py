from rest_framework import serializers

from qarith.serializers import DeviationReportSerializer


class GrowthPointSerializer(serializers.Serializer):
    N = serializers.IntegerField()
    absJ = serializers.FloatField(source='abs_J')
    v_N = serializers.FloatField()


class FitResultSerializer(serializers.Serializer):
    model = serializers.CharField()
    limit = serializers.FloatField()
    a = serializers.FloatField()
    b = serializers.FloatField()
    residual = serializers.FloatField()
    heuristic = serializers.SerializerMethodField()

    def get_heuristic(self, obj):
        return obj.model == 'corrected'


class GrowthSeriesSerializer(serializers.Serializer):
    knot = serializers.CharField(source='name')
    points = GrowthPointSerializer(many=True)
    reference = serializers.FloatField(allow_null=True)
    v3 = serializers.FloatField(allow_null=True)
    fit = FitResultSerializer(allow_null=True)


class SimplicialReportSerializer(serializers.Serializer):
    knot = serializers.CharField(source='name')
    model = serializers.CharField()
    limit = serializers.FloatField()
    v3 = serializers.FloatField()
    norm_estimate = serializers.FloatField()
    reference_volume = serializers.FloatField(allow_null=True)
    reference_norm = serializers.FloatField(allow_null=True)
    relative_error = serializers.FloatField(allow_null=True)
    summands = serializers.ListField(child=serializers.CharField())
    summand_limit = serializers.FloatField(allow_null=True)
    additivity = DeviationReportSerializer(allow_null=True)
